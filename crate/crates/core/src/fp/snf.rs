//! Smith normal form of integer matrices over arbitrary-precision
//! integers, with pivoting by minimal nonzero magnitude.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form: entries d1 | d2 | ... with the
/// nonzero ones forming a divisibility chain, padded with zeros up to
/// min(rows, cols). Empty input gives an empty diagonal.
pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let dim = rows.min(cols);
    let mut diag = Vec::with_capacity(dim);
    let mut t = 0usize;
    while t < dim {
        // locate the entry of minimal nonzero magnitude in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if m[r][c].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pr, pc)| m[r][c].abs() < m[pr][pc].abs()) {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        // eliminate column t and row t; restart if a remainder survives
        let mut clean = true;
        for r in t + 1..rows {
            if m[r][t].is_zero() {
                continue;
            }
            let q = div_round(&m[r][t], &m[t][t]);
            for c in t..cols {
                let sub = &q * &m[t][c];
                m[r][c] = &m[r][c] - sub;
            }
            if !m[r][t].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            if m[t][c].is_zero() {
                continue;
            }
            let q = div_round(&m[t][c], &m[t][t]);
            for row in m.iter_mut().skip(t) {
                let sub = &q * &row[t];
                row[c] = &row[c] - sub;
            }
            if !m[t][c].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold any non-divisible entry into the pivot block
        let d = m[t][t].abs();
        let mut ok = true;
        'outer: for r in t + 1..rows {
            for c in t + 1..cols {
                if !(&m[r][c] % &d).is_zero() {
                    // add row r to row t and redo the elimination
                    for cc in t..cols {
                        m[t][cc] = &m[t][cc] + &m[r][cc];
                    }
                    ok = false;
                    break 'outer;
                }
            }
        }
        if !ok {
            continue;
        }
        diag.push(d);
        t += 1;
    }
    diag.resize(dim, BigInt::zero());
    diag
}

/// Quotient rounded toward the nearest integer, so remainders shrink.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2u8);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn snf_i64(rows: &[&[i64]]) -> Vec<i64> {
        smith_normal_form(&big(rows))
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn basics() {
        assert_eq!(snf_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf_i64(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        // gcd of entries 2, gcd of 2x2 minors 4, |det| 624
        assert_eq!(snf_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]), vec![2, 2, 156]);
        assert_eq!(snf_i64(&[&[0, 0], &[0, 0]]), vec![0, 0]);
        assert_eq!(snf_i64(&[&[6, 4]]), vec![2]);
        assert!(smith_normal_form(&[]).is_empty());
    }

    #[test]
    fn chain_and_determinant() {
        // product of invariant factors = |det| for nonsingular square input
        let d = snf_i64(&[&[3, 1, -4], &[2, -3, 1], &[0, 5, 9]]);
        assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
        let det: i64 = 3 * (-3 * 9 - 5) - ((2 * 9)) + (-4) * (2 * 5);
        assert_eq!(d.iter().product::<i64>(), det.abs());
    }

    #[test]
    fn rectangular() {
        assert_eq!(snf_i64(&[&[2, 0, 0], &[0, 4, 0]]), vec![2, 4]);
        assert_eq!(snf_i64(&[&[1, 2], &[3, 4], &[5, 6]]), vec![1, 2]);
    }
}
