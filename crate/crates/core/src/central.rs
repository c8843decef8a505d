//! Central scalars ±p^a l^b and the subgroups of <-1, p, l> they generate.
//!
//! A subgroup of {±1} × Z × Z is modeled as a sublattice of Z^3: the first
//! coordinate is the exponent of -1 and the vector (2,0,0) is always
//! adjoined, so lattice membership and index computations (via an
//! upper-triangular Hermite basis) answer every group question exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quat::QuatRat;

/// The rational number sign · p^exp_p · l^exp_l.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CentralScalar {
    pub sign: i8,
    pub exp_p: i64,
    pub exp_l: i64,
    pub p: u64,
    pub l: u64,
}

impl CentralScalar {
    pub fn new(sign: i8, exp_p: i64, exp_l: i64, p: u64, l: u64) -> Self {
        assert!(sign == 1 || sign == -1);
        CentralScalar {
            sign,
            exp_p,
            exp_l,
            p,
            l,
        }
    }

    pub fn one(p: u64, l: u64) -> Self {
        Self::new(1, 0, 0, p, l)
    }

    pub fn minus_one(p: u64, l: u64) -> Self {
        Self::new(-1, 0, 0, p, l)
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.exp_p == 0 && self.exp_l == 0
    }

    pub fn mul(&self, other: &CentralScalar) -> CentralScalar {
        assert_eq!((self.p, self.l), (other.p, other.l));
        CentralScalar::new(
            self.sign * other.sign,
            self.exp_p + other.exp_p,
            self.exp_l + other.exp_l,
            self.p,
            self.l,
        )
    }

    pub fn inv(&self) -> CentralScalar {
        CentralScalar::new(self.sign, -self.exp_p, -self.exp_l, self.p, self.l)
    }

    pub fn pow(&self, e: i64) -> CentralScalar {
        let sign = if e % 2 == 0 { 1 } else { self.sign };
        CentralScalar::new(sign, self.exp_p * e, self.exp_l * e, self.p, self.l)
    }

    /// Exact rational value.
    pub fn value(&self) -> BigRational {
        let pow = |base: u64, e: i64| -> BigRational {
            let b = BigInt::from(base).pow(e.unsigned_abs() as u32);
            if e >= 0 {
                BigRational::from_integer(b)
            } else {
                BigRational::new(BigInt::one(), b)
            }
        };
        let mut v = pow(self.p, self.exp_p) * pow(self.l, self.exp_l);
        if self.sign < 0 {
            v = -v;
        }
        v
    }

    /// Coordinates in the Z^3 model (sign parity, exp_p, exp_l).
    fn vector(&self) -> [i64; 3] {
        [if self.sign < 0 { 1 } else { 0 }, self.exp_p, self.exp_l]
    }
}

impl fmt::Display for CentralScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Decomposes a real scalar of the form ±p^r l^s; errors if the input has
/// an imaginary part or carries any other prime factor.
pub fn as_central(a: &QuatRat, p: u64, l: u64) -> Result<CentralScalar> {
    let v = a.as_rational()?;
    if v.is_zero() {
        return Err(Error::NotUnitGroupElement("0".to_string()));
    }
    let sign = if v.is_negative() { -1 } else { 1 };
    let mut exp_p = 0i64;
    let mut exp_l = 0i64;
    let strip = |n: &BigInt, q: u64| -> (BigInt, i64) {
        let q = BigInt::from(q);
        let mut n = n.abs();
        let mut e = 0i64;
        while (&n % &q).is_zero() && !n.is_zero() {
            n /= &q;
            e += 1;
        }
        (n, e)
    };
    let (num_rest, np) = strip(v.numer(), p);
    let (num_rest, nl) = strip(&num_rest, l);
    exp_p += np;
    exp_l += nl;
    let (den_rest, dp) = strip(v.denom(), p);
    let (den_rest, dl) = strip(&den_rest, l);
    exp_p -= dp;
    exp_l -= dl;
    if !num_rest.is_one() || !den_rest.is_one() {
        return Err(Error::NotUnitGroupElement(v.to_string()));
    }
    Ok(CentralScalar::new(sign, exp_p, exp_l, p, l))
}

/// A finitely generated subgroup of <-1, p, l>.
#[derive(Clone, Debug)]
pub struct CentralSubgroup {
    pub p: u64,
    pub l: u64,
    pub generators: Vec<CentralScalar>,
    /// Upper-triangular Hermite basis rows of the Z^3 lattice (the
    /// relation (-1)^2 = 1 is built in). Row i, when present, has its
    /// leading nonzero entry in column `pivot_cols[i]`.
    basis: Vec<[i64; 3]>,
    pivot_cols: Vec<usize>,
    /// Unimodular record: basis row r equals transform[r] · (gens ++ [(-1)^2]).
    transform: Vec<Vec<i64>>,
}

impl CentralSubgroup {
    pub fn new(p: u64, l: u64, generators: Vec<CentralScalar>) -> Self {
        let mut rows: Vec<[i64; 3]> = generators.iter().map(|g| g.vector()).collect();
        rows.push([2, 0, 0]);
        let m = rows.len();
        let mut transform: Vec<Vec<i64>> = (0..m)
            .map(|r| (0..m).map(|c| i64::from(r == c)).collect())
            .collect();
        // integer row echelon via gcd elimination, column by column
        let mut basis = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut out_transform = Vec::new();
        let mut used = vec![false; m];
        for col in 0..3 {
            loop {
                // pick the unused row with smallest nonzero |entry| in col
                let mut best: Option<usize> = None;
                for r in 0..m {
                    if used[r] || rows[r][col] == 0 {
                        continue;
                    }
                    if best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs()) {
                        best = Some(r);
                    }
                }
                let Some(pr) = best else { break };
                // reduce all other unused rows against it
                let mut changed = false;
                for r in 0..m {
                    if r == pr || used[r] || rows[r][col] == 0 {
                        continue;
                    }
                    let q = rows[r][col].div_euclid(rows[pr][col]);
                    for c in 0..3 {
                        rows[r][c] -= q * rows[pr][c];
                    }
                    for c in 0..m {
                        transform[r][c] -= q * transform[pr][c];
                    }
                    if rows[r][col] != 0 {
                        changed = true;
                    }
                }
                if !changed {
                    // pr is the pivot for this column
                    if rows[pr][col] < 0 {
                        for c in 0..3 {
                            rows[pr][c] = -rows[pr][c];
                        }
                        for c in 0..m {
                            transform[pr][c] = -transform[pr][c];
                        }
                    }
                    used[pr] = true;
                    basis.push(rows[pr]);
                    pivot_cols.push(col);
                    out_transform.push(transform[pr].clone());
                    break;
                }
            }
        }
        // reduce entries above each pivot so the basis is canonical
        for i in (0..basis.len()).rev() {
            let col = pivot_cols[i];
            let d = basis[i][col];
            for j in 0..i {
                let q = basis[j][col].div_euclid(d);
                if q != 0 {
                    for c in 0..3 {
                        basis[j][c] -= q * basis[i][c];
                    }
                    for c in 0..m {
                        out_transform[j][c] -= q * out_transform[i][c];
                    }
                }
            }
        }
        CentralSubgroup {
            p,
            l,
            generators,
            basis,
            pivot_cols,
            transform: out_transform,
        }
    }

    /// Reduces a vector by the basis; returns (remainder, row coefficients).
    fn reduce(&self, mut v: [i64; 3]) -> ([i64; 3], Vec<i64>) {
        let mut coeffs = vec![0i64; self.basis.len()];
        for (i, row) in self.basis.iter().enumerate() {
            let col = self.pivot_cols[i];
            let q = v[col].div_euclid(row[col]);
            if q != 0 {
                for c in 0..3 {
                    v[c] -= q * row[c];
                }
                coeffs[i] = q;
            }
        }
        (v, coeffs)
    }

    /// The canonical Hermite-basis generators (identity rows dropped).
    pub fn basis_scalars(&self) -> Vec<CentralScalar> {
        self.basis
            .iter()
            .filter(|row| !(row[0] % 2 == 0 && row[1] == 0 && row[2] == 0))
            .map(|row| {
                let sign = if row[0] % 2 == 0 { 1 } else { -1 };
                CentralScalar::new(sign, row[1], row[2], self.p, self.l)
            })
            .collect()
    }

    pub fn contains(&self, s: &CentralScalar) -> bool {
        let (rem, _) = self.reduce(s.vector());
        rem == [0, 0, 0]
    }

    /// Expresses `s` as integer exponents over `generators`, if possible.
    pub fn solve_exponents(&self, s: &CentralScalar) -> Option<Vec<i64>> {
        let (rem, coeffs) = self.reduce(s.vector());
        if rem != [0, 0, 0] {
            return None;
        }
        let n = self.generators.len();
        let mut out = vec![0i64; n];
        for (i, &c) in coeffs.iter().enumerate() {
            for (g, e) in out.iter_mut().zip(self.transform[i].iter()) {
                *g += c * e;
            }
            // the trailing transform column multiplies the built-in (-1)^2
            // relation and is dropped
        }
        debug_assert!({
            let mut acc = CentralScalar::one(self.p, self.l);
            for (g, &e) in self.generators.iter().zip(out.iter()) {
                acc = acc.mul(&g.pow(e));
            }
            acc == *s
        });
        Some(out)
    }

    /// Index in the full group <-1, p, l>; None when infinite.
    pub fn index_in_ambient(&self) -> Option<u64> {
        if self.basis.len() < 3 {
            return None;
        }
        Some(self.basis.iter().zip(&self.pivot_cols).map(|(r, &c)| r[c] as u64).product())
    }

    /// One representative per coset of this subgroup in <-1, p, l>,
    /// the identity coset first. Requires finite index.
    pub fn coset_reps(&self) -> Option<Vec<CentralScalar>> {
        self.index_in_ambient()?;
        let d: Vec<i64> = self
            .basis
            .iter()
            .zip(&self.pivot_cols)
            .map(|(r, &c)| r[c])
            .collect();
        let mut reps = Vec::new();
        for a in 0..d[0] {
            for b in 0..d[1] {
                for c in 0..d[2] {
                    reps.push(CentralScalar::new(
                        if a % 2 == 1 { -1 } else { 1 },
                        b,
                        c,
                        self.p,
                        self.l,
                    ));
                }
            }
        }
        reps.sort_by_key(|r| !r.is_one());
        Some(reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuatRat {
        s.parse().unwrap()
    }

    #[test]
    fn central_decomposition() {
        assert_eq!(
            as_central(&q("81"), 3, 5).unwrap(),
            CentralScalar::new(1, 4, 0, 3, 5)
        );
        assert_eq!(
            as_central(&q("-15"), 3, 5).unwrap(),
            CentralScalar::new(-1, 1, 1, 3, 5)
        );
        assert_eq!(
            as_central(&q("3/5"), 3, 5).unwrap(),
            CentralScalar::new(1, 1, -1, 3, 5)
        );
        assert_eq!(as_central(&q("1+2i"), 3, 5), Err(Error::NotCentral));
        assert!(matches!(
            as_central(&q("6"), 3, 5),
            Err(Error::NotUnitGroupElement(_))
        ));
    }

    #[test]
    fn scalar_arithmetic() {
        let a = CentralScalar::new(-1, 1, 1, 3, 5);
        assert_eq!(a.value(), BigRational::from_integer((-15).into()));
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(a.pow(2).value(), BigRational::from_integer(225.into()));
        assert_eq!(
            CentralScalar::new(1, 1, -1, 3, 5).value(),
            BigRational::new(3.into(), 5.into())
        );
    }

    #[test]
    fn center_of_the_35_pair() {
        // <3^4, 5^4> inside <-1, 3, 5> has index 2 * 4 * 4 = 32
        let c = CentralSubgroup::new(
            3,
            5,
            vec![
                CentralScalar::new(1, 4, 0, 3, 5),
                CentralScalar::new(1, 0, 4, 3, 5),
            ],
        );
        assert_eq!(c.index_in_ambient(), Some(32));
        assert!(c.contains(&CentralScalar::new(1, 4, 0, 3, 5)));
        assert!(c.contains(&CentralScalar::new(1, 8, 4, 3, 5)));
        assert!(!c.contains(&CentralScalar::minus_one(3, 5)));
        assert!(!c.contains(&CentralScalar::new(1, 2, 0, 3, 5)));
        let reps = c.coset_reps().unwrap();
        assert_eq!(reps.len(), 32);
        assert!(reps[0].is_one());
        // all reps pairwise inequivalent modulo the subgroup
        for (i, r) in reps.iter().enumerate() {
            for s in &reps[i + 1..] {
                assert!(!c.contains(&r.mul(&s.inv())));
            }
        }
    }

    #[test]
    fn full_kernel_group() {
        let c = CentralSubgroup::new(
            3,
            5,
            vec![
                CentralScalar::minus_one(3, 5),
                CentralScalar::new(1, 1, 0, 3, 5),
                CentralScalar::new(-1, 0, 1, 3, 5),
            ],
        );
        assert_eq!(c.index_in_ambient(), Some(1));
        let t = CentralScalar::new(-1, 3, -2, 3, 5);
        let e = c.solve_exponents(&t).unwrap();
        let mut acc = CentralScalar::one(3, 5);
        for (g, &k) in c.generators.iter().zip(&e) {
            acc = acc.mul(&g.pow(k));
        }
        assert_eq!(acc, t);
    }

    #[test]
    fn infinite_index() {
        let c = CentralSubgroup::new(3, 5, vec![CentralScalar::new(1, 4, 0, 3, 5)]);
        assert_eq!(c.index_in_ambient(), None);
        assert!(c.coset_reps().is_none());
        let trivial = CentralSubgroup::new(3, 5, vec![]);
        assert_eq!(trivial.index_in_ambient(), None);
        assert!(trivial.contains(&CentralScalar::one(3, 5)));
    }
}
