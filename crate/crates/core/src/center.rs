//! The two-generator analysis pipeline: Cayley-ball scanning for central
//! scalars, center determination by coset-index exclusion, shortest
//! relator search, the extension presentation of the two-generator
//! group, and the norm-determinant abelianization criterion.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use crate::central::{as_central, CentralScalar, CentralSubgroup};
use crate::error::{Error, Result};
use crate::fp::abelian::AbelianGroup;
use crate::fp::coset::{todd_coxeter, Enumeration};
use crate::fp::presentation::Presentation;
use crate::gamma::{build_gamma_presentation, build_q_presentation};
use crate::proj::ProjQuat;
use crate::quat::{commutes, QuatInt, QuatRat};
use crate::word::Word;
use crate::xsets::is_prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallScan {
    pub radius: usize,
    pub elements_visited: usize,
    pub scalars_found: Vec<CentralScalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterStatus {
    Determined,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct CenterResult {
    pub status: CenterStatus,
    pub center: CentralSubgroup,
    /// Per nontrivial coset representative λ of the lower bound: the
    /// index of <x, y, λ> and the index of <x, y>.
    pub evidence: Vec<(CentralScalar, usize, usize)>,
}

#[derive(Clone, Copy, Debug)]
pub struct CenterConfig {
    pub radius: usize,
    pub coset_limit: usize,
}

impl Default for CenterConfig {
    fn default() -> Self {
        CenterConfig {
            radius: 10,
            coset_limit: 1_000_000,
        }
    }
}

fn prime_factors(mut n: BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let db = BigInt::from(d);
        if (&n % &db) == BigInt::from(0u8) {
            out.push(d);
            while (&n % &db) == BigInt::from(0u8) {
                n /= &db;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_string().parse().expect("factor fits in u64"));
    }
    out
}

/// The ambient prime pair for a ball scan, derived from the two norms;
/// a placeholder partner is used when only one prime occurs.
fn ambient_primes(x: &QuatInt, y: &QuatInt) -> (u64, u64) {
    let mut ps: Vec<u64> = prime_factors(x.norm());
    for q in prime_factors(y.norm()) {
        if !ps.contains(&q) {
            ps.push(q);
        }
    }
    ps.sort_unstable();
    match ps.len() {
        0 => (3, 5),
        1 => {
            let p = ps[0];
            (p, if p == 3 { 5 } else { 3 })
        }
        _ => (ps[0], ps[1]),
    }
}

/// Breadth-first scan of the projective Cayley graph of <ψ(x), ψ(y)> to
/// the given radius. Each node stores the exact quaternion value of its
/// first word; every edge closing a cycle contributes the central ratio
/// of the two values.
pub fn ball_scan(x: &QuatInt, y: &QuatInt, radius: usize) -> Result<BallScan> {
    let xr = x.to_rat();
    let yr = y.to_rat();
    if commutes(&xr, &yr) {
        return Err(Error::CommutingInput);
    }
    let (p, l) = ambient_primes(x, y);
    let moves = [xr.clone(), xr.inv()?, yr.clone(), yr.inv()?];
    let mut values: HashMap<ProjQuat, (usize, QuatRat)> = HashMap::new();
    let mut queue: VecDeque<ProjQuat> = VecDeque::new();
    let start = ProjQuat::identity();
    values.insert(start.clone(), (0, QuatRat::one()));
    queue.push_back(start);
    let mut scalars: BTreeSet<(i8, i64, i64)> = BTreeSet::new();
    while let Some(node) = queue.pop_front() {
        let (depth, value) = values[&node].clone();
        for m in &moves {
            let next_value = &value * m;
            let next = ProjQuat::normalize_rat(&next_value)?;
            match values.get(&next) {
                None => {
                    if depth < radius {
                        values.insert(next.clone(), (depth + 1, next_value));
                        queue.push_back(next);
                    }
                }
                Some((_, existing)) => {
                    let ratio = &next_value * &existing.inv()?;
                    let s = as_central(&ratio, p, l)?;
                    if !s.is_one() {
                        scalars.insert((s.sign, s.exp_p, s.exp_l));
                    }
                }
            }
        }
    }
    Ok(BallScan {
        radius,
        elements_visited: values.len(),
        scalars_found: scalars
            .into_iter()
            .map(|(s, a, b)| CentralScalar::new(s, a, b, p, l))
            .collect(),
    })
}

/// Word for the given element of X_p (or X_l) in the generators of the
/// extension presentation: the element is ± an orbit representative or
/// its conjugate, realized through the kernel scalar words.
pub fn element_word(
    qp: &crate::gamma::QPresentation,
    gen_quats: &[QuatInt],
    gen_values: &[QuatRat],
    target: &QuatInt,
    p: u64,
    l: u64,
) -> Option<Word> {
    let norm_scalar = {
        let n = target.norm();
        let v = QuatRat::from_int(QuatInt::scalar(n));
        as_central(&v, p, l).ok()?
    };
    for (i, g) in gen_quats.iter().enumerate() {
        let candidates: [(QuatInt, Word); 4] = [
            (g.clone(), Word::letter(i, true)),
            (-g, qp.minus_one_word.concat(&Word::letter(i, true))),
            (
                g.conj(),
                qp.scalar_word(&norm_scalar)?.concat(&Word::letter(i, false)),
            ),
            (
                -&g.conj(),
                qp.minus_one_word
                    .concat(&qp.scalar_word(&norm_scalar)?)
                    .concat(&Word::letter(i, false)),
            ),
        ];
        for (value, word) in candidates {
            if &value == target {
                let w = word.free_reduce();
                debug_assert_eq!(w.eval(gen_values).ok()?, target.to_rat());
                return Some(w);
            }
        }
    }
    None
}

/// Determines the center of <x, y> for x ∈ X_p, y ∈ X_l: the ball scan
/// gives a lower-bound subgroup C0; if C0 has finite index in <-1,p,l>,
/// every nontrivial coset representative λ is excluded by the strict
/// index drop [G:<x,y>] > [G:<x,y,λ>] in the extension group G.
pub fn compute_center(x: &QuatInt, y: &QuatInt, config: CenterConfig) -> Result<CenterResult> {
    let scan = ball_scan(x, y, config.radius)?;
    let (p, l) = ambient_primes(x, y);
    let c0 = CentralSubgroup::new(p, l, scan.scalars_found.clone());
    let inconclusive = |c0: CentralSubgroup| CenterResult {
        status: CenterStatus::Inconclusive,
        center: c0,
        evidence: vec![],
    };
    // infinite index: the scan cannot pin the center down
    if c0.index_in_ambient().is_none() {
        return Ok(inconclusive(c0));
    }
    if p == l || !is_prime(p) || !is_prime(l) || p == 2 || l == 2 {
        return Err(Error::BadPrimePair(p, l));
    }
    if x.norm() != BigInt::from(p) || y.norm() != BigInt::from(l) {
        return Err(Error::NotInT);
    }
    let gp = build_gamma_presentation(p, l, None, None)?;
    let qp = build_q_presentation(&gp)?;
    let values = qp.gen_values();
    let wx = element_word(&qp, &gp.gen_quats, &values, x, p, l).ok_or(Error::NotInT)?;
    let wy = element_word(&qp, &gp.gen_quats, &values, y, p, l).ok_or(Error::NotInT)?;
    let base = match todd_coxeter(&qp.pres, &[wx.clone(), wy.clone()], config.coset_limit)? {
        Enumeration::Complete(t) => t.n_cosets(),
        Enumeration::Overflow => return Ok(inconclusive(c0)),
    };
    let reps = c0.coset_reps().expect("finite index checked");
    let mut evidence = Vec::new();
    let mut all_strict = true;
    for lam in reps.into_iter().filter(|r| !r.is_one()) {
        let wl = qp.scalar_word(&lam).expect("kernel generates the ambient group");
        let with = match todd_coxeter(
            &qp.pres,
            &[wx.clone(), wy.clone(), wl],
            config.coset_limit,
        )? {
            Enumeration::Complete(t) => t.n_cosets(),
            Enumeration::Overflow => return Ok(inconclusive(c0)),
        };
        if with >= base {
            all_strict = false;
        }
        evidence.push((lam, with, base));
    }
    Ok(CenterResult {
        status: if all_strict {
            CenterStatus::Determined
        } else {
            CenterStatus::Inconclusive
        },
        center: c0,
        evidence,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelatorMode {
    /// Evaluation is a real scalar: a relator of <ψ(x), ψ(y)>.
    ProjectiveRelator,
    /// Evaluation is exactly 1: a relator of <x, y>.
    ExactRelator,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Node {
    Proj(ProjQuat),
    Exact(QuatRat),
}

/// The shortest nontrivial freely reduced relator of length at most
/// max_len, found by breadth-first cycle detection in the Cayley graph
/// (generator 0 is x, generator 1 is y).
pub fn shortest_relator(
    x: &QuatInt,
    y: &QuatInt,
    mode: RelatorMode,
    max_len: usize,
) -> Result<Option<(usize, Word)>> {
    let xr = x.to_rat();
    let yr = y.to_rat();
    let moves: [(usize, bool, QuatRat); 4] = [
        (0, true, xr.clone()),
        (0, false, xr.inv()?),
        (1, true, yr.clone()),
        (1, false, yr.inv()?),
    ];
    let wrap = |v: &QuatRat| -> Result<Node> {
        Ok(match mode {
            RelatorMode::ProjectiveRelator => Node::Proj(ProjQuat::normalize_rat(v)?),
            RelatorMode::ExactRelator => Node::Exact(v.clone()),
        })
    };
    let radius = max_len.div_ceil(2);
    let mut info: HashMap<Node, (usize, Word, QuatRat)> = HashMap::new();
    let mut queue: VecDeque<Node> = VecDeque::new();
    let root = wrap(&QuatRat::one())?;
    info.insert(root.clone(), (0, Word::empty(), QuatRat::one()));
    queue.push_back(root);
    let mut best: Option<(usize, Word)> = None;
    while let Some(node) = queue.pop_front() {
        let (depth, word, value) = info[&node].clone();
        for (g, s, m) in &moves {
            // keep words freely reduced
            if let Some(&(lg, ls)) = word.letters.last() {
                if lg == *g && ls != *s {
                    continue;
                }
            }
            let next_value = &value * m;
            let next = wrap(&next_value)?;
            match info.get(&next) {
                None => {
                    if depth < radius {
                        let mut w = word.clone();
                        w.letters.push((*g, *s));
                        info.insert(next.clone(), (depth + 1, w, next_value));
                        queue.push_back(next);
                    }
                }
                Some((_, other_word, _)) => {
                    let mut w = word.clone();
                    w.letters.push((*g, *s));
                    let relator = w.concat(&other_word.inverse()).free_reduce();
                    if relator.is_empty() || relator.len() > max_len {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some((len, bw)) => {
                            relator.len() < *len
                                || (relator.len() == *len && relator.letters < bw.letters)
                        }
                    };
                    if better {
                        best = Some((relator.len(), relator));
                    }
                }
            }
        }
    }
    Ok(best)
}

/// The extension presentation of <x, y> from the image relators, the
/// center-designated relator indices, and the relator evaluations:
/// evaluation-1 relators are kept verbatim, every other relator u is
/// replaced by (expression of its evaluation in the designated words)
/// times u^{-1}, and commutators of both generators with each designated
/// word are appended.
pub fn assemble_xy_presentation(
    relators_image: &[Word],
    center_relator_indices: &[usize],
    evaluations: &[CentralScalar],
) -> Result<Presentation> {
    assert_eq!(relators_image.len(), evaluations.len());
    let designated: Vec<CentralScalar> = center_relator_indices
        .iter()
        .map(|&i| evaluations[i])
        .collect();
    let (p, l) = match evaluations.first() {
        Some(e) => (e.p, e.l),
        None => (3, 5),
    };
    let sub = CentralSubgroup::new(p, l, designated);
    for e in evaluations {
        if !sub.contains(e) {
            return Err(Error::CenterNotGenerated);
        }
    }
    let express = |s: &CentralScalar| -> Word {
        let exps = sub.solve_exponents(s).expect("membership checked");
        let mut w = Word::empty();
        for (&i, &e) in center_relator_indices.iter().zip(&exps) {
            let r = &relators_image[i];
            let factor = if e >= 0 { r.clone() } else { r.inverse() };
            for _ in 0..e.unsigned_abs() {
                w = w.concat(&factor);
            }
        }
        w
    };
    let mut relators = Vec::new();
    for (i, r) in relators_image.iter().enumerate() {
        if evaluations[i].is_one() {
            relators.push(r.clone());
        }
    }
    for (i, r) in relators_image.iter().enumerate() {
        if evaluations[i].is_one() || center_relator_indices.contains(&i) {
            continue;
        }
        relators.push(express(&evaluations[i]).concat(&r.inverse()));
    }
    for g in 0..2 {
        for &i in center_relator_indices {
            relators.push(Word::commutator(
                &Word::letter(g, true),
                &relators_image[i],
            ));
        }
    }
    Ok(Presentation::new(
        vec!["x".to_string(), "y".to_string()],
        relators,
    ))
}

/// Abelianization read off from the norm exponent pairs:
/// when the determinant r1·s2 - r2·s1 is nonzero the group abelianizes
/// to Z × Z; otherwise no conclusion (None).
pub fn abelianization_by_norms(norm_x: (i64, i64), norm_y: (i64, i64)) -> Option<AbelianGroup> {
    let det = norm_x.0 * norm_y.1 - norm_y.0 * norm_x.1;
    if det != 0 {
        Some(AbelianGroup {
            free_rank: 2,
            torsion: vec![],
        })
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionStatus {
    TorsionFree,
    HasTorsion,
}

/// Torsion in a group whose center this subgroup is: present iff -1
/// belongs to the subgroup.
pub fn torsion_status(c: &CentralSubgroup) -> TorsionStatus {
    if c.contains(&CentralScalar::minus_one(c.p, c.l)) {
        TorsionStatus::HasTorsion
    } else {
        TorsionStatus::TorsionFree
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(s: &str) -> QuatInt {
        s.parse().unwrap()
    }

    #[test]
    fn ball_scan_35() {
        let scan = ball_scan(&qi("1+j+k"), &qi("1+2j"), 10).unwrap();
        let values: Vec<String> = scan.scalars_found.iter().map(|s| s.to_string()).collect();
        assert!(values.contains(&"81".to_string()), "values: {values:?}");
        assert!(values.contains(&"625".to_string()), "values: {values:?}");
        // small radius finds nothing (shortest relator has length 12)
        let small = ball_scan(&qi("1+j+k"), &qi("1+2j"), 3).unwrap();
        assert!(small.scalars_found.is_empty());
        assert_eq!(
            ball_scan(&qi("1+2i"), &qi("1+4i"), 3),
            Err(Error::CommutingInput)
        );
    }

    #[test]
    fn ball_scan_free_pair() {
        let scan = ball_scan(&qi("1+2i"), &qi("1+2k"), 6).unwrap();
        assert!(scan.scalars_found.is_empty());
        // free group ball sizes: 1 + 4 + 4*3 + ... + 4*3^5
        let expect: usize = 1 + 4 * ((3usize.pow(6) - 1) / 2);
        assert_eq!(scan.elements_visited, expect);
    }

    #[test]
    fn shortest_relators_35() {
        let x = qi("1+j+k");
        let y = qi("1+2j");
        let (len, w) = shortest_relator(&x, &y, RelatorMode::ProjectiveRelator, 13)
            .unwrap()
            .unwrap();
        assert_eq!(len, 12);
        let gens = vec!["x".to_string(), "y".to_string()];
        let r1 = Word::parse("yxxyxYxxxxYx", &gens).unwrap();
        assert!(w.equivalent_up_to_rotation_inversion(&r1));
        let (len, w) = shortest_relator(&x, &y, RelatorMode::ExactRelator, 14)
            .unwrap()
            .unwrap();
        assert_eq!(len, 14);
        let r4 = Word::parse("yxxyXYYYXXYxyy", &gens).unwrap();
        assert!(w.equivalent_up_to_rotation_inversion(&r4));
        // the free pair admits no relator at all within the bound
        assert_eq!(
            shortest_relator(&qi("1+2i"), &qi("1+2k"), RelatorMode::ProjectiveRelator, 13)
                .unwrap(),
            None
        );
        assert_eq!(
            shortest_relator(&qi("1+2i"), &qi("1+2k"), RelatorMode::ExactRelator, 13).unwrap(),
            None
        );
    }

    #[test]
    fn center_35_determined() {
        let res = compute_center(&qi("1+j+k"), &qi("1+2j"), CenterConfig::default()).unwrap();
        assert_eq!(res.status, CenterStatus::Determined);
        assert_eq!(res.center.index_in_ambient(), Some(32));
        assert_eq!(res.evidence.len(), 31);
        for (lam, with, without) in &res.evidence {
            assert_eq!(*without, 64);
            assert!(*with < *without, "no index drop for {lam}");
        }
        // the specific drop to 32 for the classical sample of cosets
        for s in ["-1", "9", "-9", "25", "-25", "225", "-225"] {
            let found = res
                .evidence
                .iter()
                .find(|(lam, _, _)| lam.to_string() == s)
                .unwrap_or_else(|| panic!("coset rep {s} missing"));
            assert_eq!(found.1, 32);
        }
        assert!(res
            .center
            .contains(&CentralScalar::new(1, 4, 0, 3, 5)));
        assert!(res
            .center
            .contains(&CentralScalar::new(1, 0, 4, 3, 5)));
        assert_eq!(torsion_status(&res.center), TorsionStatus::TorsionFree);
    }

    #[test]
    fn center_inconclusive_cases() {
        // degraded radius: the lower bound stays trivial
        let res = compute_center(&qi("1+j+k"), &qi("1+2j"), CenterConfig { radius: 3, coset_limit: 1000 }).unwrap();
        assert_eq!(res.status, CenterStatus::Inconclusive);
        // free pair (both of norm 5): short-circuits before any
        // presentation machinery
        let res = compute_center(&qi("1+2i"), &qi("1+2k"), CenterConfig::default()).unwrap();
        assert_eq!(res.status, CenterStatus::Inconclusive);
        assert!(matches!(
            compute_center(&qi("1+2i"), &qi("1+4i"), CenterConfig::default()),
            Err(Error::CommutingInput)
        ));
    }

    #[test]
    fn assembled_presentation_35() {
        let ab = vec!["a".to_string(), "b".to_string()];
        let rs: Vec<Word> = [
            "baabaBaaaaBa",
            "AbAbaabAAbAbbaabab",
            "babaabbaBabbaababb",
            "baabABBBAABabb",
            "aBaaBaBAABAAbAAbAbaaba",
        ]
        .iter()
        .map(|s| Word::parse(s, &ab).unwrap())
        .collect();
        let one = CentralScalar::one(3, 5);
        let evals = vec![
            CentralScalar::new(1, 4, 0, 3, 5),
            CentralScalar::new(1, 0, 4, 3, 5),
            CentralScalar::new(1, 4, 4, 3, 5),
            one,
            one,
        ];
        let pres = assemble_xy_presentation(&rs, &[0, 1], &evals).unwrap();
        let rendered: Vec<String> = pres
            .relators
            .iter()
            .map(|r| r.render(&pres.gen_names))
            .collect();
        let expect = [
            "yxxyXYYYXXYxyy",
            "xYxxYxYXXYXXyXXyXyxxyx",
            "yxxyxYxxxyxxyXXyXyyxxyxYXYXXYYXyXYYXXYXY",
            "xyxxyxYxxxxYXyXXXXyXYXXY",
            "yXyxxyXXyXyyxxyxyXYXYXXYYxYxxYXXYxYx",
            "yyxxyxYxxxxYxYXyXXXXyXYXXY",
            "yXyXyxxyXXyXyyxxyxYXYXXYYxYxxYXXYxYx",
        ];
        assert_eq!(rendered, expect);
        // every relator evaluates to exactly 1 on the quaternion pair
        let values = vec![qi("1+j+k").to_rat(), qi("1+2j").to_rat()];
        for r in &pres.relators {
            assert!(r.eval(&values).unwrap().is_one());
        }
        // a designated set failing to generate all evaluations is refused
        assert!(matches!(
            assemble_xy_presentation(&rs, &[0], &evals),
            Err(Error::CenterNotGenerated)
        ));
    }

    #[test]
    fn norm_determinant() {
        let a = abelianization_by_norms((1, 0), (0, 1)).unwrap();
        assert_eq!((a.free_rank, a.torsion.len()), (2, 0));
        assert!(abelianization_by_norms((1, 0), (1, 0)).is_none());
        assert!(abelianization_by_norms((1, 1), (0, 1)).is_some());
    }

    #[test]
    fn torsion_cases() {
        let tf = CentralSubgroup::new(
            3,
            5,
            vec![CentralScalar::new(1, 4, 0, 3, 5), CentralScalar::new(1, 0, 4, 3, 5)],
        );
        assert_eq!(torsion_status(&tf), TorsionStatus::TorsionFree);
        let ht = CentralSubgroup::new(
            3,
            5,
            vec![
                CentralScalar::minus_one(3, 5),
                CentralScalar::new(1, 1, 0, 3, 5),
                CentralScalar::new(1, 0, 1, 3, 5),
            ],
        );
        assert_eq!(torsion_status(&ht), TorsionStatus::HasTorsion);
        let mixed = CentralSubgroup::new(
            3,
            5,
            vec![CentralScalar::new(1, 2, 0, 3, 5), CentralScalar::new(-1, 0, 2, 3, 5)],
        );
        assert_eq!(torsion_status(&mixed), TorsionStatus::TorsionFree);
    }
}
