//! Exact Hamilton quaternion arithmetic over Z and Q.
//!
//! The multiplication follows i^2 = j^2 = k^2 = -1 and ij = -ji = k.
//! `QuatRat` keeps a single shared positive denominator in lowest terms,
//! so every value arising here (denominators of the form p^a l^b) is
//! represented exactly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integral Hamilton quaternion x0 + x1 i + x2 j + x3 k.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuatInt {
    pub c: [BigInt; 4],
}

impl QuatInt {
    pub fn new(c: [BigInt; 4]) -> Self {
        QuatInt { c }
    }

    pub fn from_i64(c: [i64; 4]) -> Self {
        QuatInt {
            c: [c[0].into(), c[1].into(), c[2].into(), c[3].into()],
        }
    }

    pub fn zero() -> Self {
        Self::from_i64([0, 0, 0, 0])
    }

    pub fn one() -> Self {
        Self::from_i64([1, 0, 0, 0])
    }

    pub fn scalar(n: BigInt) -> Self {
        QuatInt::new([n, BigInt::zero(), BigInt::zero(), BigInt::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// True if the i, j, k coefficients all vanish.
    pub fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn conj(&self) -> Self {
        QuatInt::new([
            self.c[0].clone(),
            -self.c[1].clone(),
            -self.c[2].clone(),
            -self.c[3].clone(),
        ])
    }

    /// Norm |x|^2 = x0^2 + x1^2 + x2^2 + x3^2.
    pub fn norm(&self) -> BigInt {
        self.c.iter().map(|x| x * x).sum()
    }

    pub fn real_part(&self) -> &BigInt {
        &self.c[0]
    }

    /// gcd of the four coefficients (0 for the zero quaternion).
    pub fn content(&self) -> BigInt {
        self.c
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    pub fn to_rat(&self) -> QuatRat {
        QuatRat::new(self.clone(), BigInt::one())
    }
}

impl Add for &QuatInt {
    type Output = QuatInt;
    fn add(self, rhs: &QuatInt) -> QuatInt {
        QuatInt::new([
            &self.c[0] + &rhs.c[0],
            &self.c[1] + &rhs.c[1],
            &self.c[2] + &rhs.c[2],
            &self.c[3] + &rhs.c[3],
        ])
    }
}

impl Sub for &QuatInt {
    type Output = QuatInt;
    fn sub(self, rhs: &QuatInt) -> QuatInt {
        QuatInt::new([
            &self.c[0] - &rhs.c[0],
            &self.c[1] - &rhs.c[1],
            &self.c[2] - &rhs.c[2],
            &self.c[3] - &rhs.c[3],
        ])
    }
}

impl Neg for &QuatInt {
    type Output = QuatInt;
    fn neg(self) -> QuatInt {
        QuatInt::new([
            -self.c[0].clone(),
            -self.c[1].clone(),
            -self.c[2].clone(),
            -self.c[3].clone(),
        ])
    }
}

impl Mul for &QuatInt {
    type Output = QuatInt;
    fn mul(self, rhs: &QuatInt) -> QuatInt {
        let (a0, a1, a2, a3) = (&self.c[0], &self.c[1], &self.c[2], &self.c[3]);
        let (b0, b1, b2, b3) = (&rhs.c[0], &rhs.c[1], &rhs.c[2], &rhs.c[3]);
        QuatInt::new([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

/// Rational Hamilton quaternion stored as an integral numerator over a
/// single positive denominator, in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuatRat {
    num: QuatInt,
    den: BigInt,
}

impl QuatRat {
    /// Builds the reduced form; `den` may be negative (the sign moves into
    /// the numerator) but not zero.
    pub fn new(num: QuatInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let (num, den) = if den.is_negative() {
            (-&num, -den)
        } else {
            (num, den)
        };
        let g = num.content().gcd(&den);
        if g.is_zero() || g.is_one() {
            return QuatRat { num, den };
        }
        QuatRat {
            num: QuatInt::new([
                &num.c[0] / &g,
                &num.c[1] / &g,
                &num.c[2] / &g,
                &num.c[3] / &g,
            ]),
            den: den / g,
        }
    }

    pub fn from_int(q: QuatInt) -> Self {
        QuatRat::new(q, BigInt::one())
    }

    pub fn from_i64(c: [i64; 4]) -> Self {
        QuatRat::from_int(QuatInt::from_i64(c))
    }

    pub fn zero() -> Self {
        QuatRat::from_int(QuatInt::zero())
    }

    pub fn one() -> Self {
        QuatRat::from_int(QuatInt::one())
    }

    pub fn from_rational(r: &BigRational) -> Self {
        QuatRat::new(QuatInt::scalar(r.numer().clone()), r.denom().clone())
    }

    pub fn numerator(&self) -> &QuatInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num == QuatInt::one()
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }

    /// The scalar value when the quaternion is real.
    pub fn as_rational(&self) -> Result<BigRational> {
        if !self.is_real() {
            return Err(Error::NotCentral);
        }
        Ok(BigRational::new(self.num.c[0].clone(), self.den.clone()))
    }

    /// Exact integral form when the denominator is 1.
    pub fn as_int(&self) -> Option<QuatInt> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        QuatRat {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), &self.den * &self.den)
    }

    /// Multiplicative inverse, via conj(x) = |x|^2 x^{-1}.
    pub fn inv(&self) -> Result<QuatRat> {
        if self.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        // x = n/d, so x^{-1} = d * conj(n) / |n|^2.
        let n2 = self.num.norm();
        let mut num = self.num.conj();
        for c in num.c.iter_mut() {
            *c = &*c * &self.den;
        }
        Ok(QuatRat::new(num, n2))
    }

    pub fn pow(&self, e: i64) -> Result<QuatRat> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QuatRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl Mul for &QuatRat {
    type Output = QuatRat;
    fn mul(self, rhs: &QuatRat) -> QuatRat {
        QuatRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for &QuatRat {
    type Output = QuatRat;
    fn add(self, rhs: &QuatRat) -> QuatRat {
        let mut a = self.num.clone();
        for c in a.c.iter_mut() {
            *c = &*c * &rhs.den;
        }
        let mut b = rhs.num.clone();
        for c in b.c.iter_mut() {
            *c = &*c * &self.den;
        }
        QuatRat::new(&a + &b, &self.den * &rhs.den)
    }
}

impl Neg for &QuatRat {
    type Output = QuatRat;
    fn neg(self) -> QuatRat {
        QuatRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// True iff ab = ba.
pub fn commutes(a: &QuatRat, b: &QuatRat) -> bool {
    a * b == b * a
}

/// The commutator a b a^{-1} b^{-1}.
pub fn commutator(a: &QuatRat, b: &QuatRat) -> Result<QuatRat> {
    let ab = a * b;
    Ok(&(&ab * &a.inv()?) * &b.inv()?)
}

// ---------------------------------------------------------------------------
// text syntax: "a+bi+cj+dk" with rational coefficients
// ---------------------------------------------------------------------------

impl FromStr for QuatRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<QuatRat> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty quaternion literal".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut acc = QuatRat::zero();
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ => {
                    if pos != 0 {
                        return Err(Error::Parse(format!("expected sign at {pos} in {s:?}")));
                    }
                }
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let numer: BigInt = if pos > start {
                s[start..pos].parse().map_err(|_| Error::Parse(s.clone()))?
            } else {
                BigInt::one()
            };
            let mut denom = BigInt::one();
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                let ds = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == ds {
                    return Err(Error::Parse(format!("missing denominator in {s:?}")));
                }
                denom = s[ds..pos].parse().map_err(|_| Error::Parse(s.clone()))?;
                if denom.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
            }
            let unit = if pos < bytes.len() {
                match bytes[pos] {
                    b'i' => {
                        pos += 1;
                        1
                    }
                    b'j' => {
                        pos += 1;
                        2
                    }
                    b'k' => {
                        pos += 1;
                        3
                    }
                    _ => 0,
                }
            } else {
                0
            };
            if unit == 0 && pos == start {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeffs = [
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
            ];
            coeffs[unit] = sign * numer;
            acc = &acc + &QuatRat::new(QuatInt::new(coeffs), denom);
        }
        Ok(acc)
    }
}

impl FromStr for QuatInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<QuatInt> {
        let q: QuatRat = s.parse()?;
        q.as_int()
            .ok_or_else(|| Error::Parse(format!("{s:?} is not integral")))
    }
}

impl fmt::Display for QuatRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let units = ["", "i", "j", "k"];
        let mut first = true;
        for (idx, coeff) in self.num.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            if coeff.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let unit = units[idx];
            if mag.is_one() && self.den.is_one() && idx != 0 {
                write!(f, "{unit}")?;
            } else if self.den.is_one() {
                write!(f, "{mag}{unit}")?;
            } else {
                write!(f, "{mag}/{}{unit}", self.den)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for QuatInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rat())
    }
}

impl fmt::Debug for QuatInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Debug for QuatRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuatRat {
        s.parse().unwrap()
    }

    /// Oracle for multiplication: the 4x4 left-multiplication integer
    /// matrix model of H(Q) acting on coefficient vectors.
    fn mul_by_matrix(a: &QuatRat, b: &QuatRat) -> QuatRat {
        let ac = &a.numerator().c;
        let m = [
            [ac[0].clone(), -ac[1].clone(), -ac[2].clone(), -ac[3].clone()],
            [ac[1].clone(), ac[0].clone(), -ac[3].clone(), ac[2].clone()],
            [ac[2].clone(), ac[3].clone(), ac[0].clone(), -ac[1].clone()],
            [ac[3].clone(), -ac[2].clone(), ac[1].clone(), ac[0].clone()],
        ];
        let bc = &b.numerator().c;
        let mut out = [
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
        ];
        for r in 0..4 {
            for c in 0..4 {
                out[r] = &out[r] + &m[r][c] * &bc[c];
            }
        }
        QuatRat::new(QuatInt::new(out), a.denominator() * b.denominator())
    }

    #[test]
    fn mul_matches_matrix_model() {
        // (1+j+k)(1+2j) frozen from the matrix oracle.
        let a = q("1+j+k");
        let b = q("1+2j");
        let expect = mul_by_matrix(&a, &b);
        assert_eq!(expect, q("-1-2i+3j+k"));
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn basis_products() {
        let i = q("i");
        let j = q("j");
        let k = q("k");
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&i * &i, q("-1"));
    }

    #[test]
    fn conj_and_norm() {
        assert_eq!(q("1+2i").conj(), q("1-2i"));
        assert_eq!(q("5").conj(), q("5"));
        assert_eq!(q("1+j+k").norm(), BigRational::from_integer(3.into()));
        assert_eq!(q("1+2j").norm(), BigRational::from_integer(5.into()));
        assert!(QuatRat::zero().norm().is_zero());
    }

    #[test]
    fn inverse() {
        let a = q("1+2i");
        let inv = a.inv().unwrap();
        assert_eq!(inv, q("1/5-2/5i"));
        assert!((&a * &inv).is_one());
        assert_eq!(q("-1").inv().unwrap(), q("-1"));
        assert_eq!(QuatRat::zero().inv(), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn commuting_pairs() {
        assert!(commutes(&q("1+2i"), &q("1+4i")));
        assert!(!commutes(&q("1+2i"), &q("1+2k")));
        let a = q("2+3j-k");
        assert!(commutes(&a, &(&a * &a)));
    }

    #[test]
    fn commutators() {
        assert_eq!(commutator(&q("i"), &q("j")).unwrap(), q("-1"));
        let a = q("1+j+k");
        assert!(commutator(&a, &a).unwrap().is_one());
        // [1+j+k, (1+2j)(1+j+k)^{-1}(1+2j)]
        let x = q("1+j+k");
        let y = q("1+2j");
        let inner = &(&y * &x.inv().unwrap()) * &y;
        assert_eq!(
            commutator(&x, &inner).unwrap(),
            q("-7/25+8/75i+32/75j+64/75k")
        );
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "0",
            "1",
            "-1",
            "1+2j",
            "-7/25-8/25i+16/25j+16/25k",
            "3/5+3/5k",
            "i",
            "-k",
            "11/3+4i+6j-2k",
        ] {
            let v = q(s);
            assert_eq!(v, q(&v.to_string()), "roundtrip of {s}");
        }
        assert_eq!(q("3/5 + 6/5 k"), q("3/5+6/5k"));
    }
}
