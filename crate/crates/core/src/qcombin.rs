//! Exact q-analogue counting: brackets, q-factorials, Gaussian binomials,
//! subspace intersection counts and the independence bounds.
//!
//! Everything here is arbitrary-precision integer or rational arithmetic.
//! `q = 1` means the ordinary (set) case: `[n] = n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

pub type ExactInt = BigUint;
pub type ExactRational = BigRational;

/// `[n] = (q^n - 1)/(q - 1)`, and `n` when `q = 1`.
pub fn bracket(n: u32, q: u64) -> ExactInt {
    if q == 1 {
        return BigUint::from(n);
    }
    let q = BigUint::from(q);
    let (quot, rem) = (q.pow(n) - 1u32).div_rem(&(q - 1u32));
    debug_assert!(rem.is_zero());
    quot
}

/// `[n]! = [n][n-1]...[1]`.
pub fn q_factorial(n: u32, q: u64) -> ExactInt {
    (1..=n).fold(BigUint::one(), |acc, i| acc * bracket(i, q))
}

/// Number of k-subspaces of a v-space over GF(q); 0 when `k > v`.
pub fn gauss_binomial(v: u32, k: u32, q: u64) -> ExactInt {
    if k > v {
        return BigUint::zero();
    }
    let num = q_factorial(v, q);
    let den = q_factorial(k, q) * q_factorial(v - k, q);
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "q-binomial division must be exact");
    quot
}

/// Number of ℓ-subspaces meeting a fixed k-subspace in exactly a fixed
/// j-subspace of it: `q^{(ℓ-j)(k-j)} · [v-k choose ℓ-j]`.
pub fn count_meeting(v: u32, k: u32, l: u32, j: u32, q: u64) -> Result<ExactInt> {
    if k > v || l > v || j > k.min(l) || l - j > v - k {
        return Err(invalid(format!(
            "count_meeting needs j ≤ min(k,ℓ) and ℓ-j ≤ v-k (v={v}, k={k}, ℓ={l}, j={j})"
        )));
    }
    Ok(BigUint::from(q).pow((l - j) * (k - j)) * gauss_binomial(v - k, l - j, q))
}

/// Largest independent set in qK_{v:k}: `[v-1 choose k-1]`.
pub fn independence_bound(v: u32, k: u32, q: u64) -> Result<ExactInt> {
    if k == 0 || v < 2 * k {
        return Err(invalid(format!(
            "independence bound needs 1 ≤ k and v ≥ 2k (v={v}, k={k})"
        )));
    }
    Ok(gauss_binomial(v - 1, k - 1, q))
}

/// Erdős–Ko–Rado: t-intersecting families of k-sets have size at most `C(v-t, k-t)`.
pub fn ekr_bound(v: u32, k: u32, t: u32) -> Result<ExactInt> {
    if t > k || k > v {
        return Err(invalid(format!(
            "EKR bound needs t ≤ k ≤ v (v={v}, k={k}, t={t})"
        )));
    }
    if (v as u64) < (k - t + 1) as u64 * (t + 1) as u64 {
        return Err(invalid(format!(
            "EKR bound needs v ≥ (k-t+1)(t+1) = {} (v={v})",
            (k - t + 1) * (t + 1)
        )));
    }
    Ok(gauss_binomial(v - t, k - t, 1))
}

/// Frankl–Wilson: families of k-spaces pairwise meeting in dimension ≥ t have
/// size at most `max{[v-t choose k-t], [2k-t choose k]}`.
pub fn frankl_wilson_bound(v: u32, k: u32, t: u32, q: u64) -> Result<ExactInt> {
    if t > k || k > v || 2 * k < t {
        return Err(invalid(format!(
            "Frankl–Wilson bound needs t ≤ k ≤ v (v={v}, k={k}, t={t})"
        )));
    }
    Ok(gauss_binomial(v - t, k - t, q).max(gauss_binomial(2 * k - t, k, q)))
}

/// `[v]/[k]` in lowest terms.
pub fn fractional_chromatic(v: u32, k: u32, q: u64) -> Result<ExactRational> {
    if k == 0 || k > v {
        return Err(invalid(format!(
            "fractional chromatic number needs 1 ≤ k ≤ v (v={v}, k={k})"
        )));
    }
    Ok(BigRational::new(bracket(v, q).into(), bracket(k, q).into()))
}

/// Ordinary binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> ExactInt {
    gauss_binomial(n, k, 1)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn geometric_sum(n: u32, q: u64) -> u64 {
        (0..n).map(|i| q.pow(i)).sum()
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket(4, 2), n(15));
        assert_eq!(bracket(0, 7), n(0));
        assert_eq!(bracket(5, 3), n(geometric_sum(5, 3)));
        assert_eq!(bracket(5, 3), n(121));
        assert_eq!(bracket(6, 1), n(6));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gauss_binomial(4, 2, 2), n(35));
        assert_eq!(gauss_binomial(5, 2, 1), n(10));
        assert_eq!(gauss_binomial(5, 2, 2), n(155));
        assert_eq!(gauss_binomial(2, 3, 2), n(0));
        assert_eq!(gauss_binomial(7, 0, 5), n(1));
    }

    #[test]
    fn symmetry_and_q_equals_one() {
        for q in 1..=4u64 {
            for v in 0..=8 {
                for k in 0..=v {
                    assert_eq!(gauss_binomial(v, k, q), gauss_binomial(v, v - k, q));
                }
            }
        }
        // Pascal's rule as an independent oracle for C(v, k)
        let mut row = vec![1u64];
        for v in 0..=10u32 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(gauss_binomial(v, k as u32, 1), n(c));
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
    }

    #[test]
    fn meeting_counts() {
        assert_eq!(count_meeting(4, 2, 2, 0, 2).unwrap(), n(16));
        assert_eq!(count_meeting(6, 3, 2, 2, 3).unwrap(), n(1));
        assert_eq!(count_meeting(5, 2, 2, 1, 2).unwrap(), n(14));
        assert!(count_meeting(4, 2, 2, 3, 2).is_err());
        assert!(count_meeting(4, 3, 3, 0, 2).is_err());
    }

    #[test]
    fn aggregated_meeting_identity() {
        // Σ_j [k choose j] · count_meeting(v,k,ℓ,j) = [v choose ℓ]
        for q in [2u64, 3, 4] {
            for v in 1..=7u32 {
                for k in 0..=v {
                    for l in 0..=v {
                        let total = (0..=k.min(l))
                            .filter(|&j| l - j <= v - k)
                            .map(|j| {
                                gauss_binomial(k, j, q) * count_meeting(v, k, l, j, q).unwrap()
                            })
                            .fold(BigUint::zero(), |a, b| a + b);
                        assert_eq!(total, gauss_binomial(v, l, q), "v={v} k={k} ℓ={l} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(independence_bound(4, 2, 2).unwrap(), n(7));
        assert_eq!(independence_bound(5, 2, 3).unwrap(), n(40));
        assert!(independence_bound(3, 2, 2).is_err());
        assert_eq!(frankl_wilson_bound(5, 2, 1, 2).unwrap(), n(15));
        assert_eq!(gauss_binomial(4, 1, 2), n(15));
        assert_eq!(gauss_binomial(3, 2, 2), n(7));
        assert_eq!(ekr_bound(5, 2, 1).unwrap(), n(4));
        assert!(ekr_bound(3, 2, 1).is_err());
    }

    #[test]
    fn fractional_values() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(fractional_chromatic(5, 2, 2).unwrap(), r(31, 3));
        assert_eq!(fractional_chromatic(4, 2, 2).unwrap(), r(5, 1));
        for v in 2..9 {
            for k in 1..=v {
                assert_eq!(
                    fractional_chromatic(v, k, 1).unwrap(),
                    r(v as i64, k as i64)
                );
            }
        }
    }
}
