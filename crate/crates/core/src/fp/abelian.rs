//! Abelianization via Smith normal form and the derived-series quotient
//! chain.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fp::coset::{todd_coxeter, Enumeration};
use crate::fp::presentation::Presentation;
use crate::fp::rewrite::reidemeister_schreier;
use crate::fp::snf::smith_normal_form;
use crate::word::Word;

/// Invariant-factor description of a finitely generated abelian group:
/// Z^free_rank × Z_{d1} × ... × Z_{dk} with d1 | d2 | ... and di >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| d.to_string().parse().expect("torsion fits in u64"))
            .collect()
    }

    /// Group order; None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        for d in &self.torsion {
            parts.push(format!("Z{d}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Canonical abelianization: Smith normal form of the relator
/// exponent-sum matrix.
pub fn abelianization(pres: &Presentation) -> AbelianGroup {
    let n = pres.n_gens();
    let rows: Vec<Vec<BigInt>> = pres
        .relators
        .iter()
        .map(|r| {
            r.exponent_sums(n)
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return AbelianGroup {
            free_rank: n,
            torsion: vec![],
        };
    }
    let diag = smith_normal_form(&rows);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<BigInt> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    AbelianGroup {
        free_rank: n - nonzero,
        torsion,
    }
}

/// The chain [G^ab, (G')^ab, ...] with `depth` entries. Each step after
/// the first requires the previous quotient to be finite; the coset
/// table of the derived subgroup is obtained by adding all generator
/// commutators and enumerating over the trivial subgroup.
pub fn derived_ab_chain(
    pres: &Presentation,
    depth: usize,
    coset_limit: usize,
) -> Result<Vec<AbelianGroup>> {
    let mut out = vec![abelianization(pres)];
    let mut cur = pres.clone();
    for _ in 1..depth {
        let last = out.last().unwrap();
        if last.free_rank > 0 {
            return Err(Error::InfiniteAbelianization);
        }
        let n = cur.n_gens();
        let mut comms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                comms.push(Word::commutator(
                    &Word::letter(i, true),
                    &Word::letter(j, true),
                ));
            }
        }
        let quotient = cur.with_added_relators(&comms);
        let table = match todd_coxeter(&quotient, &[], coset_limit)? {
            Enumeration::Complete(t) => t,
            Enumeration::Overflow => return Err(Error::Overflow),
        };
        debug_assert_eq!(Some(BigInt::from(table.n_cosets())), last.order());
        // the regular table of G/G' is exactly the coset table of G' in G
        let sub = reidemeister_schreier(&cur, &table)?;
        out.push(abelianization(&sub));
        cur = sub;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    fn ab(s: &str) -> (usize, Vec<u64>) {
        let a = abelianization(&pres(s));
        (a.free_rank, a.torsion_u64())
    }

    #[test]
    fn basics() {
        assert_eq!(ab("< a | aaaaa >"), (0, vec![5]));
        assert_eq!(ab("< a, b >"), (2, vec![]));
        assert_eq!(ab("< a, b | abAB >"), (2, vec![]));
        assert_eq!(ab("< a, b | aa, bbb, abab >"), (0, vec![2]));
        // exponent matrix [[2,2],[2,2]] has SNF diag (2, 0)
        assert_eq!(ab("< a, b | aabb, abab >"), (1, vec![2]));
    }

    #[test]
    fn five_relator_candidate() {
        // the exponent matrix has rows (8,0), (0,8), (8,8), (0,0), (0,0)
        let p = pres("< a, b | baabaBaaaaBa, AbAbaabAAbAbbaabab, babaabbaBabbaababb, baabABBBAABabb, aBaaBaBAABAAbAAbAbaaba >");
        let a = abelianization(&p);
        assert_eq!(a.free_rank, 0);
        assert_eq!(a.torsion_u64(), vec![8, 8]);
    }

    #[test]
    fn quotient_by_added_relators() {
        let p = pres("< a, b | abAB >"); // Z x Z
        let q = p.with_added_relators(&[p.word("aa").unwrap()]);
        let a = abelianization(&q);
        assert_eq!((a.free_rank, a.torsion_u64()), (1, vec![2]));
        let trivial = p.with_added_relators(&[p.word("a").unwrap(), p.word("b").unwrap()]);
        assert!(abelianization(&trivial).is_trivial());
    }

    #[test]
    fn derived_chain_small() {
        // S3: G^ab = Z2, G' = A3 = C3 so (G')^ab = Z3
        let s3 = pres("< a, b | aa, bbb, abab >");
        let chain = derived_ab_chain(&s3, 2, 1000).unwrap();
        assert_eq!(chain[0].torsion_u64(), vec![2]);
        assert_eq!(chain[1].torsion_u64(), vec![3]);
        // free rank refusal
        let z = pres("< a >");
        assert_eq!(derived_ab_chain(&z, 1, 100).unwrap().len(), 1);
        assert_eq!(
            derived_ab_chain(&z, 2, 100),
            Err(Error::InfiniteAbelianization)
        );
    }

    #[test]
    fn display() {
        let a = AbelianGroup {
            free_rank: 2,
            torsion: vec![BigInt::from(2), BigInt::from(4)],
        };
        assert_eq!(a.to_string(), "Z x Z x Z2 x Z4");
        assert_eq!(
            AbelianGroup {
                free_rank: 0,
                torsion: vec![]
            }
            .to_string(),
            "1"
        );
    }
}
