//! Randomized property checks for the exact-arithmetic layers.

use num_bigint::BigInt;
use proptest::prelude::*;

use quatgroups::fp::snf::smith_normal_form;
use quatgroups::quat::{commutator, commutes, QuatInt, QuatRat};
use quatgroups::word::Word;
use quatgroups::ProjQuat;

fn quat_strategy() -> impl Strategy<Value = QuatInt> {
    prop::array::uniform4(-50i64..=50).prop_map(QuatInt::from_i64)
}

fn nonzero_quat_strategy() -> impl Strategy<Value = QuatInt> {
    quat_strategy().prop_filter("nonzero", |q| !q.is_zero())
}

fn word_strategy(n_gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n_gens, any::<bool>()), 0..24).prop_map(Word::new)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in quat_strategy(), b in quat_strategy()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.norm(), a.norm() * b.norm());
    }

    #[test]
    fn conjugate_gives_norm(a in quat_strategy()) {
        let n = &a * &a.conj();
        prop_assert_eq!(n, QuatInt::scalar(a.norm()));
    }

    #[test]
    fn quat_display_roundtrip(a in quat_strategy()) {
        let text = a.to_string();
        let back: QuatInt = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rational_inverse(a in nonzero_quat_strategy()) {
        let r = a.to_rat();
        let prod = &r * &r.inv().unwrap();
        prop_assert!(prod.is_one());
    }

    #[test]
    fn commutator_detects_commuting(a in nonzero_quat_strategy(), b in nonzero_quat_strategy()) {
        let (ar, br) = (a.to_rat(), b.to_rat());
        let c = commutator(&ar, &br).unwrap();
        prop_assert_eq!(commutes(&ar, &br), c.is_one());
    }

    #[test]
    fn projective_class_ignores_scalars(a in nonzero_quat_strategy(), s in -7i64..=7) {
        prop_assume!(s != 0);
        let scaled = &a * &QuatInt::scalar(BigInt::from(s));
        let pa = ProjQuat::normalize(&a).unwrap();
        let ps = ProjQuat::normalize(&scaled).unwrap();
        prop_assert_eq!(pa, ps);
    }

    #[test]
    fn projective_inverse(a in nonzero_quat_strategy()) {
        let pa = ProjQuat::normalize(&a).unwrap();
        prop_assert!(pa.mul(&pa.inv()).is_identity());
    }

    #[test]
    fn word_render_parse_roundtrip(w in word_strategy(3)) {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let text = w.render(&names);
        let back = Word::parse(&text, &names).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn free_reduction_preserves_evaluation(w in word_strategy(2)) {
        let values = [QuatRat::from_i64([1, 0, 1, 1]), QuatRat::from_i64([1, 0, 2, 0])];
        let direct = w.eval(&values).unwrap();
        let reduced = w.free_reduce().eval(&values).unwrap();
        prop_assert_eq!(direct, reduced);
    }

    #[test]
    fn word_inverse_cancels(w in word_strategy(3)) {
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn cyclic_reduction_is_conjugate_invariant(w in word_strategy(2), by in 0usize..8) {
        let r = w.free_reduce();
        prop_assume!(!r.is_empty());
        let rot = r.cyclic_reduce().rotate(by % r.cyclic_reduce().len().max(1));
        prop_assert!(rot.equivalent_up_to_rotation_inversion(&w));
    }

    #[test]
    fn snf_invariant_under_row_swaps(
        entries in prop::collection::vec(-9i64..=9, 9),
        r1 in 0usize..3, r2 in 0usize..3,
    ) {
        let mat: Vec<Vec<BigInt>> = entries
            .chunks(3)
            .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        let mut swapped = mat.clone();
        swapped.swap(r1, r2);
        prop_assert_eq!(smith_normal_form(&mat), smith_normal_form(&swapped));
    }

    #[test]
    fn snf_divisibility_chain(entries in prop::collection::vec(-9i64..=9, 9)) {
        let mat: Vec<Vec<BigInt>> = entries
            .chunks(3)
            .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        let divisors = smith_normal_form(&mat);
        for pair in divisors.windows(2) {
            if pair[0] != BigInt::from(0) {
                prop_assert_eq!(&pair[1] % &pair[0], BigInt::from(0));
            } else {
                prop_assert_eq!(&pair[1], &BigInt::from(0));
            }
        }
    }
}
