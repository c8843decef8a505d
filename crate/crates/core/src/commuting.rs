//! Existence and construction of commuting pairs x ∈ X_p, y ∈ X_l.
//!
//! The decision procedure is the n-invariant intersection test: a
//! commuting pair exists iff n(X_p) ∩ n(X_l) ≠ ∅. Constructive witnesses
//! come either from aligning two quaternions with the same n-invariant or
//! from congruence classes backed by representations p = r² + m s²
//! (m = 1, 2, 6, 22).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quat::{commutes, QuatInt};
use crate::xsets::{enumerate_xq, n_invariant, n_invariant_u64, n_set, t_membership};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteWitness {
    pub x: QuatInt,
    pub y: QuatInt,
    pub shared_n: u64,
}

impl CommuteWitness {
    /// Re-checks every invariant: memberships, commutation, n-values.
    pub fn verify(&self, p: u64, l: u64) -> bool {
        self.x.norm() == BigInt::from(p)
            && self.y.norm() == BigInt::from(l)
            && t_membership(&self.x, p, l)
            && t_membership(&self.y, p, l)
            && commutes(&self.x.to_rat(), &self.y.to_rat())
            && n_invariant_u64(&self.x) == self.shared_n
            && n_invariant_u64(&self.y) == self.shared_n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mod8Class {
    Always,
    Never,
    Depends,
}

fn check_pair(p: u64, l: u64) -> Result<()> {
    use crate::xsets::is_prime;
    if p == l || p <= 2 || l <= 2 || !is_prime(p) || !is_prime(l) {
        return Err(Error::BadPrimePair(p, l));
    }
    Ok(())
}

/// Sort key giving the canonical element order used for witness
/// selection: smaller magnitudes first, positive before negative,
/// coefficient by coefficient.
fn canonical_key(x: &QuatInt) -> Vec<(BigInt, bool)> {
    use num_traits::Signed;
    x.c.iter().map(|c| (c.abs(), c.is_negative())).collect()
}

/// The signed-scale decomposition im(x) = z · (c1, c2, c3) with z > 0 and
/// (c1, c2, c3) primitive; None for real x.
fn direction(x: &QuatInt) -> Option<(BigInt, [BigInt; 3])> {
    use num_integer::Integer;
    use num_traits::Zero;
    let im = [x.c[1].clone(), x.c[2].clone(), x.c[3].clone()];
    let g = im.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return None;
    }
    let dir = [&im[0] / &g, &im[1] / &g, &im[2] / &g];
    Some((g, dir))
}

fn with_direction(x0: &BigInt, z: &BigInt, dir: &[BigInt; 3]) -> QuatInt {
    QuatInt::new([
        x0.clone(),
        z * &dir[0],
        z * &dir[1],
        z * &dir[2],
    ])
}

/// Aligns two same-n quaternions into a commuting pair of the same norms,
/// by replacing the imaginary direction of the factor whose norm is
/// ≡ 1 (mod 4) — or of x when both norms are ≡ 3 (mod 4) — with the
/// other's direction.
pub fn align_commuting(x: &QuatInt, y: &QuatInt) -> Result<(QuatInt, QuatInt)> {
    let px = |q: &QuatInt| {
        let n = q.norm();
        n.bit(0) // odd norm
    };
    // both must live in some T: odd norm plus the parity pattern; the
    // pattern only depends on the norm so any prime pair works here
    for q in [x, y] {
        if !px(q) || !pattern_ok(q) {
            return Err(Error::NotInT);
        }
    }
    let nx = n_invariant(x);
    let ny = n_invariant(y);
    if nx != ny {
        return Err(Error::NMismatch(
            nx.to_string().parse().unwrap_or(0),
            ny.to_string().parse().unwrap_or(0),
        ));
    }
    let (Some((zx, _)), Some((_, dy))) = (direction(x), direction(y)) else {
        // both real: they already commute
        return Ok((x.clone(), y.clone()));
    };
    let four = BigInt::from(4u8);
    if (x.norm() % &four) == BigInt::from(1u8) {
        Ok((with_direction(&x.c[0], &zx, &dy), y.clone()))
    } else if (y.norm() % &four) == BigInt::from(1u8) {
        let (zy, _) = direction(y).unwrap();
        let (_, dx) = direction(x).unwrap();
        Ok((x.clone(), with_direction(&y.c[0], &zy, &dx)))
    } else {
        Ok((with_direction(&x.c[0], &zx, &dy), y.clone()))
    }
}

/// Parity pattern for the element's own (odd) norm class mod 4.
fn pattern_ok(x: &QuatInt) -> bool {
    use num_integer::Integer;
    let m = x.norm() % BigInt::from(4u8);
    let odd = |v: &BigInt| v.is_odd();
    if m == BigInt::from(1u8) {
        odd(&x.c[0]) && !odd(&x.c[1]) && !odd(&x.c[2]) && !odd(&x.c[3])
    } else if m == BigInt::from(3u8) {
        odd(&x.c[0]) && !odd(&x.c[1]) && odd(&x.c[2]) && odd(&x.c[3])
    } else {
        false
    }
}

/// Existence of a commuting pair, with a constructed witness when one
/// exists: the smallest shared n-value is realized by the canonically
/// smallest elements on each side and the pair is aligned.
pub fn exists_commuting(p: u64, l: u64) -> Result<(bool, Option<CommuteWitness>)> {
    check_pair(p, l)?;
    let np = n_set(p)?;
    let nl = n_set(l)?;
    let shared: Vec<u64> = np
        .values
        .iter()
        .copied()
        .filter(|v| nl.values.contains(v))
        .collect();
    let Some(&n) = shared.first() else {
        return Ok((false, None));
    };
    let pick = |q: u64| -> Result<QuatInt> {
        let xq = enumerate_xq(q)?;
        Ok(xq
            .elements
            .into_iter()
            .filter(|x| n_invariant_u64(x) == n)
            .min_by_key(canonical_key)
            .expect("n-value realized"))
    };
    let (x, y) = align_commuting(&pick(p)?, &pick(l)?)?;
    let w = CommuteWitness { x, y, shared_n: n };
    debug_assert!(w.verify(p, l));
    Ok((true, Some(w)))
}

/// Smallest r ≥ 0 with p = r² + m s², s ≥ 1, if any.
pub fn rep_quadratic(p: u64, m: u64) -> Option<(u64, u64)> {
    let mut r = 0u64;
    while r * r < p {
        let rest = p - r * r;
        if rest.is_multiple_of(m) {
            let s2 = rest / m;
            let s = (s2 as f64).sqrt() as u64;
            for c in [s.saturating_sub(1), s, s + 1] {
                if c >= 1 && c * c == s2 {
                    return Some((r, c));
                }
            }
        }
        r += 1;
    }
    None
}

/// Like rep_quadratic but requiring r odd (needed when the real part of
/// the constructed quaternion must be odd and m ≡ 0 (mod 4) cannot force
/// it).
fn rep_quadratic_odd_r(p: u64, m: u64) -> Option<(u64, u64)> {
    let mut r = 1u64;
    while r * r < p {
        let rest = p - r * r;
        if rest.is_multiple_of(m) {
            let s2 = rest / m;
            let s = (s2 as f64).sqrt() as u64;
            for c in [s.saturating_sub(1), s, s + 1] {
                if c >= 1 && c * c == s2 {
                    return Some((r, c));
                }
            }
        }
        r += 2;
    }
    None
}

fn build(r: u64, s: u64, dir: [i64; 3]) -> QuatInt {
    QuatInt::from_i64([
        r as i64,
        s as i64 * dir[0],
        s as i64 * dir[1],
        s as i64 * dir[2],
    ])
}

/// Constructive congruence-class witnesses (m = 1, 2, 6, 22); None when
/// no covered class applies to (p, l) in either order.
pub fn congruence_witness(p: u64, l: u64) -> Result<Option<CommuteWitness>> {
    check_pair(p, l)?;
    // m = 1: both ≡ 1 (mod 4); real part odd, i-coefficient even
    if p % 4 == 1 && l % 4 == 1 {
        let (rp, sp) = rep_quadratic_odd_r(p, 1).expect("sum of two squares");
        let (rl, sl) = rep_quadratic_odd_r(l, 1).expect("sum of two squares");
        let w = CommuteWitness {
            x: build(rp, sp, [1, 0, 0]),
            y: build(rl, sl, [1, 0, 0]),
            shared_n: 1,
        };
        debug_assert!(w.verify(p, l));
        return Ok(Some(w));
    }
    // m = 2: both ≡ 1 or 3 (mod 8); direction (0,1,1), parities automatic
    let m2 = |q: u64| q % 8 == 1 || q % 8 == 3;
    if m2(p) && m2(l) {
        let (rp, sp) = rep_quadratic(p, 2).expect("r^2 + 2s^2 class");
        let (rl, sl) = rep_quadratic(l, 2).expect("r^2 + 2s^2 class");
        let w = CommuteWitness {
            x: build(rp, sp, [0, 1, 1]),
            y: build(rl, sl, [0, 1, 1]),
            shared_n: 2,
        };
        debug_assert!(w.verify(p, l));
        return Ok(Some(w));
    }
    // m = 6 and m = 22 classes, trying (p,l) and (l,p)
    for (a, b, swapped) in [(p, l, false), (l, p, true)] {
        if let Some(w) = class_m6_m22(a, b)? {
            let w = if swapped {
                CommuteWitness {
                    x: w.y,
                    y: w.x,
                    shared_n: w.shared_n,
                }
            } else {
                w
            };
            debug_assert!(w.verify(p, l));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The m = 6 (mod 24) and m = 22 (mod 88) cases with `a` in the
/// "possibly doubled" role.
fn class_m6_m22(a: u64, b: u64) -> Result<Option<CommuteWitness>> {
    const M88: [u64; 5] = [15, 23, 31, 47, 71];
    const M88_SQ: [u64; 5] = [1, 9, 25, 49, 81];
    // both ≡ 7 (mod 24): x0^2 + 6z^2 with z odd, direction (2,1,1)
    if a % 24 == 7 && b % 24 == 7 {
        let (ra, sa) = rep_quadratic(a, 6).expect("x^2 + 6z^2 class");
        let (rb, sb) = rep_quadratic(b, 6).expect("x^2 + 6z^2 class");
        return Ok(Some(CommuteWitness {
            x: build(ra, sa, [2, 1, 1]),
            y: build(rb, sb, [2, 1, 1]),
            shared_n: 6,
        }));
    }
    // a ≡ 1, b ≡ 7 (mod 24): a = x0^2 + 24z̃^2, doubled direction (4,2,2)
    if a % 24 == 1 && b % 24 == 7 {
        let (ra, sa) = rep_quadratic(a, 24).expect("x^2 + 6(2z)^2 class");
        let (rb, sb) = rep_quadratic(b, 6).expect("x^2 + 6z^2 class");
        return Ok(Some(CommuteWitness {
            x: build(ra, sa, [4, 2, 2]),
            y: build(rb, sb, [2, 1, 1]),
            shared_n: 6,
        }));
    }
    // both in {15,23,31,47,71} (mod 88): direction (2,3,3)
    if M88.contains(&(a % 88)) && M88.contains(&(b % 88)) {
        let (ra, sa) = rep_quadratic(a, 22).expect("x^2 + 22z^2 class");
        let (rb, sb) = rep_quadratic(b, 22).expect("x^2 + 22z^2 class");
        return Ok(Some(CommuteWitness {
            x: build(ra, sa, [2, 3, 3]),
            y: build(rb, sb, [2, 3, 3]),
            shared_n: 22,
        }));
    }
    // a in {1,9,25,49,81}, b in {15,23,31,47,71} (mod 88): doubled (4,6,6)
    if M88_SQ.contains(&(a % 88)) && M88.contains(&(b % 88)) {
        let (ra, sa) = rep_quadratic(a, 88).expect("x^2 + 22(2z)^2 class");
        let (rb, sb) = rep_quadratic(b, 22).expect("x^2 + 22z^2 class");
        return Ok(Some(CommuteWitness {
            x: build(ra, sa, [4, 6, 6]),
            y: build(rb, sb, [2, 3, 3]),
            shared_n: 22,
        }));
    }
    Ok(None)
}

/// The 4×4 existence table indexed by (p mod 8, l mod 8).
pub fn classify_mod8(p: u64, l: u64) -> Result<Mod8Class> {
    check_pair(p, l)?;
    let (a, b) = (p % 8, l % 8);
    Ok(match (a, b) {
        (1, 7) | (7, 1) | (7, 7) => Mod8Class::Depends,
        (1, 1) | (1, 3) | (3, 1) | (3, 3) | (1, 5) | (5, 1) | (5, 5) => Mod8Class::Always,
        _ => Mod8Class::Never,
    })
}

/// Exhaustive commuting-pair scan over X_p × X_l (the brute-force oracle).
pub fn brute_force_commuting(p: u64, l: u64) -> Result<Option<(QuatInt, QuatInt)>> {
    check_pair(p, l)?;
    let xp = enumerate_xq(p)?;
    let xl = enumerate_xq(l)?;
    for x in &xp.elements {
        let xr = x.to_rat();
        for y in &xl.elements {
            if commutes(&xr, &y.to_rat()) {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}
