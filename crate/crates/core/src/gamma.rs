//! Presentations of the projective lattice groups generated by the
//! norm-p and norm-l quaternion classes, their relator evaluations, and
//! the central extension presentation of the full quaternion group.

use std::collections::HashMap;

use crate::central::{as_central, CentralScalar, CentralSubgroup};
use crate::error::{Error, Result};
use crate::fp::abelianization;
use crate::fp::presentation::Presentation;
use crate::proj::ProjQuat;
use crate::quat::{QuatInt, QuatRat};
use crate::word::{Letter, Word};
use crate::xsets::{enumerate_xq, orbit_reps};

/// Presentation of the projective group on one generator per conjugation
/// orbit of X_p and X_l, with (p+1)(l+1)/4 length-4 relators, together
/// with the quaternion value of each generator.
#[derive(Clone, Debug)]
pub struct GammaPresentation {
    pub p: u64,
    pub l: u64,
    pub pres: Presentation,
    pub gen_quats: Vec<QuatInt>,
    pub n_p_gens: usize,
}

impl GammaPresentation {
    pub fn gen_values(&self) -> Vec<QuatRat> {
        self.gen_quats.iter().map(|q| q.to_rat()).collect()
    }
}

/// One designated relator whose evaluation helps generate the central
/// kernel <-1, p, l>.
#[derive(Clone, Debug)]
pub struct KernelGen {
    pub relator_index: usize,
    pub word: Word,
    pub scalar: CentralScalar,
}

/// The extension presentation of the full quaternion group, plus the
/// kernel bookkeeping used to realize central scalars as words. When the
/// relator evaluations miss the sign, an explicit central generator of
/// order two (named m, valued -1) is adjoined.
#[derive(Clone, Debug)]
pub struct QPresentation {
    pub pres: Presentation,
    pub kernel: Vec<KernelGen>,
    /// Quaternion value of every generator, including the sign
    /// generator when present.
    pub gen_quats: Vec<QuatInt>,
    /// Word evaluating to exactly -1.
    pub minus_one_word: Word,
}

impl QPresentation {
    pub fn gen_values(&self) -> Vec<QuatRat> {
        self.gen_quats.iter().map(|q| q.to_rat()).collect()
    }

    /// A word in the group generators evaluating to exactly the scalar,
    /// built from the kernel relator words (and the -1 word for the
    /// sign); None if the scalar is not reachable.
    pub fn scalar_word(&self, s: &CentralScalar) -> Option<Word> {
        let sub = CentralSubgroup::new(
            s.p,
            s.l,
            self.kernel.iter().map(|k| k.scalar).collect(),
        );
        let (exps, flip) = match sub.solve_exponents(s) {
            Some(exps) => (exps, false),
            None => (
                sub.solve_exponents(&s.mul(&CentralScalar::minus_one(s.p, s.l)))?,
                true,
            ),
        };
        let mut w = Word::empty();
        for (k, &e) in self.kernel.iter().zip(&exps) {
            let factor = if e >= 0 { k.word.clone() } else { k.word.inverse() };
            for _ in 0..e.unsigned_abs() {
                w = w.concat(&factor);
            }
        }
        if flip {
            w = w.concat(&self.minus_one_word);
        }
        Some(w.free_reduce())
    }
}

fn letter_values(reps: &[QuatInt], offset: usize) -> Vec<(Letter, QuatRat)> {
    let mut out = Vec::new();
    for (i, q) in reps.iter().enumerate() {
        let v = q.to_rat();
        out.push(((offset + i, true), v.clone()));
        out.push(((offset + i, false), v.inv().expect("nonzero generator")));
    }
    out
}

/// Canonical form of a length-4 relator under cyclic rotation and
/// inversion, keeping an X_p-letter first.
fn canonical_relator(w: &Word) -> Word {
    let inv = w.inverse();
    let candidates = [
        w.clone(),
        w.rotate(2),
        inv.rotate(1),
        inv.rotate(3),
    ];
    // lex order with a positive letter sorting before its inverse, so the
    // preferred spelling uses generators rather than inverses up front
    let key = |w: &Word| -> Vec<(usize, bool)> {
        w.letters.iter().map(|&(g, s)| (g, !s)).collect()
    };
    candidates.into_iter().min_by_key(key).unwrap()
}

/// Builds the presentation: generators a1.., b1.. are orbit
/// representatives (by default the canonical ones); for every letter
/// pair (α, β) the unique letters (α̃, β̃) with α β α̃ β̃ central give a
/// relator, deduplicated up to rotation and inversion.
pub fn build_gamma_presentation(
    p: u64,
    l: u64,
    reps_p: Option<Vec<QuatInt>>,
    reps_l: Option<Vec<QuatInt>>,
) -> Result<GammaPresentation> {
    if p == l {
        return Err(Error::BadPrimePair(p, l));
    }
    let reps_p = match reps_p {
        Some(r) => r,
        None => orbit_reps(&enumerate_xq(p)?),
    };
    let reps_l = match reps_l {
        Some(r) => r,
        None => orbit_reps(&enumerate_xq(l)?),
    };
    let na = reps_p.len();
    let nb = reps_l.len();
    let mut gen_names: Vec<String> = (1..=na).map(|i| format!("a{i}")).collect();
    gen_names.extend((1..=nb).map(|i| format!("b{i}")));
    let gen_quats: Vec<QuatInt> = reps_p.iter().chain(reps_l.iter()).cloned().collect();
    let a_letters = letter_values(&reps_p, 0);
    let b_letters = letter_values(&reps_l, na);
    // projective lookup for the b-side of the completing pair
    let mut b_proj: HashMap<ProjQuat, Letter> = HashMap::new();
    for (letter, v) in &b_letters {
        b_proj.insert(ProjQuat::normalize_rat(v)?, *letter);
    }
    let gen_names_for_err = gen_names.clone();
    let mut relators: Vec<Word> = Vec::new();
    for (alpha, va) in &a_letters {
        for (beta, vb) in &b_letters {
            let prod = ProjQuat::normalize_rat(&(va * vb))?;
            let mut found = None;
            for (at, vat) in &a_letters {
                // need β̃ with ψ(α β α̃ β̃) = 1
                let need = prod.mul(&ProjQuat::normalize_rat(vat)?).inv();
                if let Some(bt) = b_proj.get(&need) {
                    found = Some(Word::new(vec![*alpha, *beta, *at, *bt]));
                    break;
                }
            }
            let Some(rel) = found else {
                return Err(Error::FactorizationMissing(
                    Word::letter(alpha.0, alpha.1).render(&gen_names_for_err),
                    Word::letter(beta.0, beta.1).render(&gen_names_for_err),
                ));
            };
            let canon = canonical_relator(&rel);
            if !relators.contains(&canon) {
                relators.push(canon);
            }
        }
    }
    let expected = ((p + 1) * (l + 1) / 4) as usize;
    if relators.len() != expected {
        return Err(Error::CountMismatch(relators.len(), expected));
    }
    let gp = GammaPresentation {
        p,
        l,
        pres: Presentation::new(gen_names, relators),
        gen_quats,
        n_p_gens: na,
    };
    // every relator must be central (projectively trivial)
    let values = gp.gen_values();
    for r in &gp.pres.relators {
        if !r.eval_proj(&values)?.is_identity() {
            return Err(Error::NotCentral);
        }
    }
    Ok(gp)
}

/// The central scalar each relator evaluates to, in presentation order.
pub fn relator_evaluations(gp: &GammaPresentation) -> Result<Vec<CentralScalar>> {
    let values = gp.gen_values();
    gp.pres
        .relators
        .iter()
        .map(|r| as_central(&r.eval(&values)?, gp.p, gp.l))
        .collect()
}

/// Picks the kernel-generating relators: candidates ordered by total
/// exponent weight, positive sign first, then presentation order, added
/// greedily while they enlarge the generated subgroup of <-1, p, l>.
fn choose_kernel_gens(
    gp: &GammaPresentation,
    evals: &[CentralScalar],
) -> Result<Vec<KernelGen>> {
    let mut order: Vec<usize> = (0..evals.len()).collect();
    order.sort_by_key(|&i| {
        let e = &evals[i];
        (
            e.exp_p.unsigned_abs() + e.exp_l.unsigned_abs(),
            e.sign < 0,
            i,
        )
    });
    let mut chosen: Vec<KernelGen> = Vec::new();
    for i in order {
        let current = CentralSubgroup::new(
            gp.p,
            gp.l,
            chosen.iter().map(|k| k.scalar).collect(),
        );
        if !current.contains(&evals[i]) {
            chosen.push(KernelGen {
                relator_index: i,
                word: gp.pres.relators[i].clone(),
                scalar: evals[i],
            });
        }
    }
    chosen.sort_by_key(|k| k.relator_index);
    Ok(chosen)
}

/// The extension presentation: relators are (i) the commutator of every
/// original generator with every kernel relator word, (ii) the square of
/// the word for -1, (iii) for every non-kernel relator u, the word u
/// times the inverse of the kernel expression of its evaluation. When
/// the relator evaluations generate the kernel only up to sign, a
/// central order-two generator m valued -1 is adjoined (with commutator
/// relators); if they miss more than the sign, the construction fails.
pub fn build_q_presentation(gp: &GammaPresentation) -> Result<QPresentation> {
    let evals = relator_evaluations(gp)?;
    let kernel = choose_kernel_gens(gp, &evals)?;
    let kernel_sub = CentralSubgroup::new(
        gp.p,
        gp.l,
        kernel.iter().map(|k| k.scalar).collect(),
    );
    let minus_one = CentralScalar::minus_one(gp.p, gp.l);
    let needs_sign_gen = !kernel_sub.contains(&minus_one);
    {
        let mut scalars: Vec<CentralScalar> = kernel.iter().map(|k| k.scalar).collect();
        scalars.push(minus_one);
        if CentralSubgroup::new(gp.p, gp.l, scalars).index_in_ambient() != Some(1) {
            return Err(Error::KernelNotGenerated);
        }
    }
    let n_orig = gp.pres.n_gens();
    let mut gen_names = gp.pres.gen_names.clone();
    let mut gen_quats = gp.gen_quats.clone();
    if needs_sign_gen {
        gen_names.push("m".to_string());
        gen_quats.push(-&QuatInt::one());
    }
    let express = |s: &CentralScalar| -> Word {
        let exps = kernel_sub
            .solve_exponents(s)
            .expect("evaluation lies in the kernel subgroup");
        let mut w = Word::empty();
        for (k, &e) in kernel.iter().zip(&exps) {
            let factor = if e >= 0 { k.word.clone() } else { k.word.inverse() };
            for _ in 0..e.unsigned_abs() {
                w = w.concat(&factor);
            }
        }
        w
    };
    let minus_one_word = if needs_sign_gen {
        Word::letter(n_orig, true)
    } else {
        express(&minus_one).free_reduce()
    };
    let mut relators = Vec::new();
    for g in 0..n_orig {
        for k in &kernel {
            relators.push(Word::commutator(&Word::letter(g, true), &k.word));
        }
    }
    relators.push(minus_one_word.concat(&minus_one_word));
    if needs_sign_gen {
        for g in 0..n_orig {
            relators.push(Word::commutator(
                &Word::letter(g, true),
                &minus_one_word,
            ));
        }
    }
    let kernel_indices: Vec<usize> = kernel.iter().map(|k| k.relator_index).collect();
    for (i, u) in gp.pres.relators.iter().enumerate() {
        if kernel_indices.contains(&i) {
            continue;
        }
        let expr = express(&evals[i]);
        relators.push(u.concat(&expr.inverse()));
    }
    let qp = QPresentation {
        pres: Presentation::new(gen_names, relators),
        kernel,
        gen_quats,
        minus_one_word,
    };
    // soundness: every relator evaluates to exactly 1 in the quaternions
    let values = qp.gen_values();
    for r in &qp.pres.relators {
        if !r.eval(&values)?.is_one() {
            return Err(Error::NotCentral);
        }
    }
    Ok(qp)
}

/// The abelianization criterion: if adjoining the relator -1 changes the
/// abelianization, then -1 is not in the derived subgroup (returns
/// false). Equal abelianizations are reported as true without claiming
/// the converse direction.
pub fn check_minus_one_in_derived(p: u64, l: u64) -> Result<bool> {
    let gp = build_gamma_presentation(p, l, None, None)?;
    let qp = build_q_presentation(&gp)?;
    let base = abelianization(&qp.pres);
    let quotient = abelianization(&qp.pres.with_added_relators(std::slice::from_ref(&qp.minus_one_word)));
    Ok(base == quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn gamma35() -> GammaPresentation {
        build_gamma_presentation(3, 5, None, None).unwrap()
    }

    #[test]
    fn gamma_35_shape() {
        let gp = gamma35();
        assert_eq!(gp.pres.gen_names, vec!["a1", "a2", "b1", "b2", "b3"]);
        assert_eq!(gp.pres.relators.len(), 6);
        assert!(gp.pres.relators.iter().all(|r| r.len() == 4));
        // the six relators match the known list up to rotation/inversion
        let expected = [
            "a1b1a2b2",
            "a1b2a2B1",
            "a1b3A2b1",
            "a1B3a1B2",
            "a1B1A2b3",
            "a2b3a2B2",
        ];
        for e in expected {
            let w = gp.pres.word(e).unwrap();
            assert!(
                gp.pres
                    .relators
                    .iter()
                    .any(|r| r.equivalent_up_to_rotation_inversion(&w)),
                "missing relator {e}"
            );
        }
    }

    #[test]
    fn relator_counts_small_pairs() {
        for (p, l) in [(3, 5), (3, 7), (3, 11), (3, 13), (5, 7), (5, 11), (5, 13), (7, 11), (7, 13), (11, 13)] {
            let gp = build_gamma_presentation(p, l, None, None).unwrap();
            let na = (p as usize).div_ceil(2);
            let nb = (l as usize).div_ceil(2);
            assert_eq!(gp.pres.n_gens(), na + nb);
            assert_eq!(gp.pres.relators.len(), ((p + 1) * (l + 1) / 4) as usize);
            // every relator is central and projectively trivial
            let values = gp.gen_values();
            for r in &gp.pres.relators {
                assert_eq!(r.len(), 4);
                assert!(r.eval(&values).unwrap().is_real());
                assert!(r.eval_proj(&values).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn evaluations_35() {
        let gp = gamma35();
        let evals = relator_evaluations(&gp).unwrap();
        let mut values: Vec<BigRational> = evals.iter().map(|e| e.value()).collect();
        values.sort();
        let mut expected: Vec<BigRational> = [-15, -5, -3, -1, 3]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        expected.insert(5, BigRational::new(3.into(), 5.into()));
        expected.sort();
        assert_eq!(values, expected);
    }

    #[test]
    fn q_presentation_35() {
        let gp = gamma35();
        let qp = build_q_presentation(&gp).unwrap();
        assert_eq!(qp.pres.relators.len(), 19);
        // kernel scalars are -1, 3, -5 (in relator order)
        let mut scalars: Vec<BigRational> = qp.kernel.iter().map(|k| k.scalar.value()).collect();
        scalars.sort();
        let mut expect: Vec<BigRational> = [-1, 3, -5]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        expect.sort();
        assert_eq!(scalars, expect);
        // the -1 word evaluates to exactly -1
        let v = qp.minus_one_word.eval(&gp.gen_values()).unwrap();
        assert_eq!(v.as_rational().unwrap(), BigRational::from_integer((-1).into()));
        let ab = abelianization(&qp.pres);
        assert_eq!(ab.free_rank, 2);
        assert_eq!(ab.torsion_u64(), vec![2, 2, 4]);
    }

    #[test]
    fn minus_one_not_in_derived() {
        assert!(!check_minus_one_in_derived(3, 5).unwrap());
    }

    #[test]
    fn scalar_words() {
        let gp = gamma35();
        let qp = build_q_presentation(&gp).unwrap();
        let values = gp.gen_values();
        for (s, expect) in [
            (CentralScalar::new(1, 2, 0, 3, 5), "9"),
            (CentralScalar::new(-1, 0, 2, 3, 5), "-25"),
            (CentralScalar::new(1, 4, 4, 3, 5), "50625"),
        ] {
            let w = qp.scalar_word(&s).unwrap();
            let v = w.eval(&values).unwrap();
            assert_eq!(v.as_rational().unwrap().to_string(), expect);
        }
    }
}
