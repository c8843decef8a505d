//! The generator sets X_q, the integral cone T_{p,l}, and the n-invariant.
//!
//! X_q consists of the integral quaternions of norm q whose coefficients
//! follow the parity pattern: for q ≡ 1 (mod 4), x0 is odd and x1, x2, x3
//! are even; for q ≡ 3 (mod 4), x1 is even and x0, x2, x3 are odd. It has
//! exactly 2(q+1) elements and is closed under negation and conjugation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::quat::{QuatInt, QuatRat};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// The parity pattern for integral quaternions of odd norm `m`: returns
/// true when the coefficients match the class of m mod 4.
pub fn parity_pattern(c: &[i64; 4], m: u64) -> bool {
    let odd = |v: i64| v.rem_euclid(2) == 1;
    match m % 4 {
        1 => odd(c[0]) && !odd(c[1]) && !odd(c[2]) && !odd(c[3]),
        3 => odd(c[0]) && !odd(c[1]) && odd(c[2]) && odd(c[3]),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XqSet {
    pub q: u64,
    pub elements: Vec<QuatInt>,
}

/// Complete enumeration of X_q.
pub fn enumerate_xq(q: u64) -> Result<XqSet> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let s = isqrt(q as i64);
    let mut elements = Vec::with_capacity(2 * (q as usize + 1));
    for x0 in -s..=s {
        let r0 = q as i64 - x0 * x0;
        if r0 < 0 {
            continue;
        }
        for x1 in -s..=s {
            let r1 = r0 - x1 * x1;
            if r1 < 0 {
                continue;
            }
            for x2 in -s..=s {
                let r2 = r1 - x2 * x2;
                if r2 < 0 {
                    continue;
                }
                let x3 = isqrt(r2);
                if x3 * x3 != r2 {
                    continue;
                }
                for x3 in if x3 == 0 { vec![0] } else { vec![x3, -x3] } {
                    let c = [x0, x1, x2, x3];
                    if parity_pattern(&c, q) {
                        elements.push(QuatInt::from_i64(c));
                    }
                }
            }
        }
    }
    elements.sort();
    elements.dedup();
    Ok(XqSet { q, elements })
}

/// Coefficients as i64, when they fit.
fn small_coeffs(x: &QuatInt) -> Option<[i64; 4]> {
    let mut out = [0i64; 4];
    for (o, c) in out.iter_mut().zip(x.c.iter()) {
        *o = i64::try_from(c).ok()?;
    }
    Some(out)
}

/// Membership in T_{p,l}: norm p^r l^s (r, s >= 0) plus the parity pattern.
pub fn t_membership(x: &QuatInt, p: u64, l: u64) -> bool {
    let mut n = x.norm();
    if n.is_zero() || n.is_negative() {
        return false;
    }
    for q in [p, l] {
        let q = BigInt::from(q);
        while (&n % &q).is_zero() {
            n /= &q;
        }
    }
    use num_traits::One;
    if !n.is_one() {
        return false;
    }
    let norm = x.norm();
    let m = (&norm % BigInt::from(4u8)).to_string().parse::<u64>().unwrap_or(0);
    let odd = |v: &BigInt| v.is_odd();
    match m {
        1 => odd(&x.c[0]) && !odd(&x.c[1]) && !odd(&x.c[2]) && !odd(&x.c[3]),
        3 => odd(&x.c[0]) && !odd(&x.c[1]) && odd(&x.c[2]) && odd(&x.c[3]),
        _ => false,
    }
}

/// n(x) = c1^2 + c2^2 + c3^2 for the primitive imaginary direction
/// (c1, c2, c3); 0 when the imaginary part vanishes.
pub fn n_invariant(x: &QuatInt) -> BigInt {
    let im = [&x.c[1], &x.c[2], &x.c[3]];
    let g = im.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return BigInt::zero();
    }
    im.iter().map(|c| {
        let r = *c / &g;
        &r * &r
    }).sum()
}

/// n-invariant of a rational quaternion, via its integral numerator.
pub fn n_invariant_rat(x: &QuatRat) -> BigInt {
    n_invariant(x.numerator())
}

pub fn n_invariant_u64(x: &QuatInt) -> u64 {
    n_invariant(x).to_string().parse().expect("n fits in u64")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSet {
    pub q: u64,
    pub values: Vec<u64>,
    pub min: u64,
}

/// The set n(X_q) with its minimum.
pub fn n_set(q: u64) -> Result<NSet> {
    let xq = enumerate_xq(q)?;
    let mut values: Vec<u64> = xq.elements.iter().map(n_invariant_u64).collect();
    values.sort_unstable();
    values.dedup();
    let min = values[0];
    Ok(NSet { q, values, min })
}

/// One canonical representative per orbit {x, -x, conj(x), -conj(x)}:
/// positive real part and lexicographically maximal imaginary tuple.
/// Representatives are returned sorted by descending imaginary tuple.
pub fn orbit_reps(xq: &XqSet) -> Vec<QuatInt> {
    let mut reps: Vec<[i64; 4]> = Vec::new();
    let mut seen: std::collections::HashSet<[i64; 4]> = std::collections::HashSet::new();
    for x in &xq.elements {
        let c = small_coeffs(x).expect("X_q coefficients are small");
        if seen.contains(&c) {
            continue;
        }
        let orbit = [
            c,
            [-c[0], -c[1], -c[2], -c[3]],
            [c[0], -c[1], -c[2], -c[3]],
            [-c[0], c[1], c[2], c[3]],
        ];
        for o in orbit {
            seen.insert(o);
        }
        let rep = orbit
            .into_iter()
            .filter(|o| o[0] > 0)
            .max_by_key(|o| [o[1], o[2], o[3]])
            .expect("real part is odd, hence nonzero");
        reps.push(rep);
    }
    reps.sort_by_key(|o| [-o[1], -o[2], -o[3]]);
    reps.into_iter().map(QuatInt::from_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(s: &str) -> QuatInt {
        s.parse().unwrap()
    }

    #[test]
    fn x3_and_x5() {
        let x3 = enumerate_xq(3).unwrap();
        assert_eq!(x3.elements.len(), 8);
        for signs in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            for s0 in [1, -1] {
                assert!(x3
                    .elements
                    .contains(&QuatInt::from_i64([s0, 0, signs.0, signs.1])));
            }
        }
        let x5 = enumerate_xq(5).unwrap();
        assert_eq!(x5.elements.len(), 12);
        assert!(x5.elements.contains(&qi("1+2i")));
        assert!(x5.elements.contains(&qi("-1-2k")));
        assert!(!x5.elements.contains(&qi("2+i")));
    }

    #[test]
    fn x7_shape() {
        let x7 = enumerate_xq(7).unwrap();
        assert_eq!(x7.elements.len(), 16);
        for x in &x7.elements {
            let c = small_coeffs(x).unwrap();
            let mut mags: Vec<i64> = c.iter().map(|v| v.abs()).collect();
            mags.sort_unstable();
            assert_eq!(mags, vec![1, 1, 1, 2]);
            assert_eq!(c[1].abs(), 2);
        }
    }

    #[test]
    fn counts_and_closure() {
        for q in (3..200).filter(|&q| is_prime(q)) {
            let xq = enumerate_xq(q).unwrap();
            assert_eq!(xq.elements.len(), 2 * (q as usize + 1), "count at q={q}");
            for x in &xq.elements {
                assert!(xq.elements.contains(&-x));
                assert!(xq.elements.contains(&x.conj()));
                assert!(t_membership(x, q, 65537));
            }
        }
        assert_eq!(enumerate_xq(9), Err(Error::NotOddPrime(9)));
        assert_eq!(enumerate_xq(2), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn t_membership_cases() {
        assert!(t_membership(&qi("1+j+k"), 3, 5));
        assert!(!t_membership(&qi("1+i"), 3, 5));
        assert!(t_membership(&qi("1+2i+2j+4k"), 3, 5)); // norm 25
        assert!(t_membership(&qi("1"), 3, 5));
        assert!(!t_membership(&qi("2"), 3, 5));
        // norm 15 with the mod-4 == 3 pattern
        assert!(t_membership(&qi("3+2i+j+k"), 3, 5));
    }

    #[test]
    fn n_values() {
        assert_eq!(n_invariant(&qi("1+2i")), BigInt::from(1));
        assert_eq!(n_invariant(&qi("1+j+k")), BigInt::from(2));
        assert_eq!(n_invariant(&qi("1+6i+j+3k")), BigInt::from(46));
        assert_eq!(n_invariant(&qi("7")), BigInt::from(0));
        assert_eq!(n_invariant(&qi("1-2i")), BigInt::from(1));
        assert_eq!(
            n_invariant_rat(&"3/5+6/5i+4/5k".parse().unwrap()),
            BigInt::from(13)
        );
    }

    #[test]
    fn n_sets() {
        let n23 = n_set(23).unwrap();
        assert_eq!(n23.values, vec![14, 22]);
        assert_eq!(n23.min, 14);
        let n97 = n_set(97).unwrap();
        assert_eq!(n97.values, vec![1, 2, 3, 6, 18, 22]);
        assert_eq!(n_set(167).unwrap().min, 46);
        assert_eq!(n_set(3).unwrap().values, vec![2]);
        assert_eq!(n_set(5).unwrap().values, vec![1]);
    }

    #[test]
    fn orbit_representatives() {
        let r3 = orbit_reps(&enumerate_xq(3).unwrap());
        assert_eq!(r3, vec![qi("1+j+k"), qi("1+j-k")]);
        let r5 = orbit_reps(&enumerate_xq(5).unwrap());
        assert_eq!(r5, vec![qi("1+2i"), qi("1+2j"), qi("1+2k")]);
        let r7 = orbit_reps(&enumerate_xq(7).unwrap());
        assert_eq!(r7.len(), 4);
        for q in (3..60).filter(|&q| is_prime(q)) {
            let xq = enumerate_xq(q).unwrap();
            assert_eq!(orbit_reps(&xq).len(), (q as usize).div_ceil(2));
        }
    }
}
