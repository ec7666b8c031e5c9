//! Brute-force shell measures: d×d matrices over ℤ/p^k counted by the
//! p-adic valuation of their determinant.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellCounts {
    pub p: u64,
    /// Residues are taken modulo p^k.
    pub k: u32,
    pub d: usize,
    /// counts[m] = #{A mod p^k : v_p(det A) = m} for m < k.
    pub counts: Vec<u128>,
    /// p^{k·d²}.
    pub total: u128,
}

impl ShellCounts {
    /// Normalized measure of the shell v(det) = m.
    pub fn measure(&self, m: usize) -> BigRational {
        BigRational::new(BigInt::from(self.counts[m]), BigInt::from(self.total))
    }
}

fn valuation(mut x: u64, p: u64, k: u32) -> u32 {
    if x == 0 {
        return k;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Exhaustive count over all residues mod p^k. Uses a product histogram
/// for d = 2 and a plain loop otherwise; fails beyond `budget` loop steps.
pub fn shell_counts(p: u64, k: u32, d: usize, budget: u128) -> Result<ShellCounts> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = p.checked_pow(k).ok_or_else(|| Error::Invalid("p^k overflows".into()))?;
    let total = (modulus as u128).checked_pow((d * d) as u32).unwrap_or(u128::MAX);
    let mut counts = vec![0u128; k as usize + 1];
    match d {
        0 => counts[0] = 1,
        2 => {
            let steps = (modulus as u128) * (modulus as u128);
            if steps > budget {
                return Err(Error::BudgetExceeded { required: steps, budget });
            }
            // hist[x] = #{(a, b) : a·b ≡ x}; det = ad − bc.
            let mut hist = vec![0u128; modulus as usize];
            for a in 0..modulus {
                for b in 0..modulus {
                    hist[(a * b % modulus) as usize] += 1;
                }
            }
            for (x, hx) in hist.iter().enumerate().filter(|(_, h)| **h > 0) {
                for (y, hy) in hist.iter().enumerate().filter(|(_, h)| **h > 0) {
                    let det = (x as u64 + modulus - y as u64) % modulus;
                    counts[valuation(det, p, k) as usize] += hx * hy;
                }
            }
        }
        _ => {
            if total > budget {
                return Err(Error::BudgetExceeded { required: total, budget });
            }
            let mut entries = vec![0u64; d * d];
            for _ in 0..total {
                let det = det_mod(&entries, d, modulus);
                counts[valuation(det, p, k) as usize] += 1;
                for e in entries.iter_mut() {
                    *e += 1;
                    if *e < modulus {
                        break;
                    }
                    *e = 0;
                }
            }
        }
    }
    counts.truncate(k as usize);
    Ok(ShellCounts { p, k, d, counts, total })
}

/// Determinant mod m by cofactor expansion (small d only).
fn det_mod(a: &[u64], d: usize, m: u64) -> u64 {
    if d == 1 {
        return a[0] % m;
    }
    let mut acc: u64 = 0;
    for col in 0..d {
        let minor: Vec<u64> =
            (1..d).flat_map(|r| (0..d).filter(move |&c| c != col).map(move |c| a[r * d + c])).collect();
        let term = a[col] % m * det_mod(&minor, d - 1, m) % m;
        acc = if col % 2 == 0 { (acc + term) % m } else { (acc + m - term) % m };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let s = shell_counts(2, 4, 1, 1 << 20).unwrap();
        assert_eq!(s.counts, vec![8, 4, 2, 1]);
        assert_eq!(s.total, 16);
    }

    #[test]
    fn two_by_two_matches_plain_loop() {
        let fast = shell_counts(2, 3, 2, 1 << 30).unwrap();
        let mut slow = vec![0u128; 3];
        for idx in 0..8u64.pow(4) {
            let e: Vec<u64> = (0..4).map(|i| idx / 8u64.pow(i) % 8).collect();
            let v = valuation(det_mod(&e, 2, 8), 2, 3) as usize;
            if v < 3 {
                slow[v] += 1;
            }
        }
        assert_eq!(fast.counts, slow);
    }

    #[test]
    fn units_of_m2() {
        // |GL_2(F_p)| = (p²−1)(p²−p) residues mod p have unit determinant.
        for p in [2u64, 3, 5] {
            let s = shell_counts(p, 1, 2, 1 << 20).unwrap();
            assert_eq!(s.counts[0], ((p * p - 1) * (p * p - p)) as u128);
        }
    }

    #[test]
    fn determinant_three() {
        assert_eq!(det_mod(&[2, 0, 1, 1, 3, 0, 0, 1, 1], 3, 1000), 7);
        let s = shell_counts(2, 1, 3, 1 << 20).unwrap();
        assert_eq!(s.counts[0], 168);
    }

    #[test]
    fn errors() {
        assert_eq!(shell_counts(4, 2, 1, 100).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(shell_counts(3, 4, 3, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
