//! Projective quaternions: nonzero quaternions up to scaling by Q*.
//!
//! Each class is stored by its unique primitive integral representative
//! whose first nonzero coefficient (in the order x0, x1, x2, x3) is
//! positive. This is a faithful element model of the lattice groups
//! generated by norm-p and norm-l quaternions modulo the central scalars.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::quat::{QuatInt, QuatRat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjQuat {
    rep: QuatInt,
}

impl ProjQuat {
    pub fn identity() -> Self {
        ProjQuat {
            rep: QuatInt::one(),
        }
    }

    /// Canonical representative of the class of a nonzero integral quaternion.
    pub fn normalize(q: &QuatInt) -> Result<ProjQuat> {
        if q.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        let g = q.content();
        let mut rep = QuatInt::new([
            &q.c[0] / &g,
            &q.c[1] / &g,
            &q.c[2] / &g,
            &q.c[3] / &g,
        ]);
        let first = rep.c.iter().find(|c| !c.is_zero()).unwrap();
        if first.is_negative() {
            rep = -&rep;
        }
        Ok(ProjQuat { rep })
    }

    /// Canonical representative of the class of a nonzero rational
    /// quaternion (the denominator is a scalar, so it drops out).
    pub fn normalize_rat(q: &QuatRat) -> Result<ProjQuat> {
        Self::normalize(q.numerator())
    }

    pub fn rep(&self) -> &QuatInt {
        &self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep == QuatInt::one()
    }

    /// True when the class contains a nonzero rational, i.e. is central.
    pub fn is_scalar(&self) -> bool {
        self.rep.is_real()
    }

    pub fn mul(&self, other: &ProjQuat) -> ProjQuat {
        ProjQuat::normalize(&(&self.rep * &other.rep)).expect("product of nonzero reps")
    }

    pub fn inv(&self) -> ProjQuat {
        // conj(x) = |x|^2 x^{-1} is a rational multiple of the inverse.
        ProjQuat::normalize(&self.rep.conj()).expect("conjugate of nonzero rep")
    }
}

impl fmt::Display for ProjQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl fmt::Debug for ProjQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ProjQuat {
        ProjQuat::normalize_rat(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(p("-2-4i"), p("1+2i"));
        assert_eq!(p("3/5+6/5k"), p("1+2k"));
        // first nonzero coefficient made positive
        assert_eq!(p("-j+k").rep(), &QuatInt::from_i64([0, 0, 1, -1]));
        assert!(ProjQuat::normalize(&QuatInt::zero()).is_err());
    }

    #[test]
    fn group_law() {
        let x = p("1+j+k");
        assert_eq!(x.mul(&x), p("-1+2j+2k"));
        assert_eq!(x.mul(&x).rep(), &QuatInt::from_i64([1, 0, -2, -2]));
        assert!(x.mul(&x.inv()).is_identity());
        let a = p("1+j+k");
        let b = p("1+2j");
        let ab: QuatRat = &"1+j+k".parse::<QuatRat>().unwrap() * &"1+2j".parse().unwrap();
        assert_eq!(a.mul(&b), ProjQuat::normalize_rat(&ab).unwrap());
    }

    #[test]
    fn scalars() {
        assert!(p("7").is_scalar());
        assert!(p("7").is_identity());
        assert!(!p("1+2i").is_scalar());
    }
}
