//! Exact arithmetic: big naturals and rationals, zero-extended binomials,
//! and a shared Catalan table.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision natural number. Every count in the crate lives here.
pub type BigNat = BigUint;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type BigRat = BigRational;

/// `C(n, k)`, extended by zero outside `0 <= k <= n`.
///
/// Negative `n` also yields zero, so summations can run over any index range
/// without guarding their boundaries.
pub fn binomial(n: i64, k: i64) -> BigNat {
    if n < 0 || k < 0 || k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigNat::one();
    for i in 0..k {
        // acc = C(n, i) here; C(n, i+1) = C(n, i) * (n - i) / (i + 1) is exact
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn catalan_table() -> &'static RwLock<Vec<BigNat>> {
    static TABLE: OnceLock<RwLock<Vec<BigNat>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigNat::one()]))
}

fn central_table() -> &'static RwLock<Vec<BigNat>> {
    static TABLE: OnceLock<RwLock<Vec<BigNat>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigNat::one()]))
}

/// The Catalan number `S_n = C(2n, n) / (n + 1)`.
///
/// Values are memoized in a process-wide append-only table.
pub fn catalan(n: i64) -> Result<BigNat> {
    if n < 0 {
        return Err(Error::arg(format!("catalan index must be non-negative, got {n}")));
    }
    let n = n as usize;
    if let Some(v) = catalan_table().read().unwrap().get(n) {
        return Ok(v.clone());
    }
    let mut central = central_table().write().unwrap();
    let mut table = catalan_table().write().unwrap();
    while central.len() <= n {
        let m = central.len() as u64;
        // C(2m, m) = C(2m-2, m-1) * 2m(2m-1) / m^2
        let mut next = central.last().unwrap() * (2 * m) * (2 * m - 1);
        let (q, r) = next.div_rem(&BigNat::from(m * m));
        assert!(r.is_zero(), "central binomial division left a remainder at m={m}");
        next = q;
        central.push(next);
    }
    while table.len() <= n {
        let m = table.len();
        let (q, r) = central[m].div_rem(&BigNat::from(m + 1));
        assert!(r.is_zero(), "C(2n,n) not divisible by n+1 at n={m}");
        table.push(q);
    }
    Ok(table[n].clone())
}

/// Catalan number for indices known to be in range; negative indices give zero.
///
/// Used inside closed-form sums where a negative index means an empty term.
pub(crate) fn catalan_or_zero(n: i64) -> BigNat {
    catalan(n).unwrap_or_default()
}

/// `S_k - 2(2k-1)/(k+1) * S_{k-1}` as an exact rational. Always zero.
pub fn catalan_recursion_residual(k: i64) -> Result<BigRat> {
    if k < 1 {
        return Err(Error::arg(format!("recursion residual needs k >= 1, got {k}")));
    }
    let lhs = BigRat::from_integer(BigInt::from(catalan(k)?));
    let factor = BigRat::new(BigInt::from(2 * (2 * k - 1)), BigInt::from(k + 1));
    let rhs = factor * BigRat::from_integer(BigInt::from(catalan(k - 1)?));
    Ok(lhs - rhs)
}

/// `2^e` as a big natural.
pub fn pow2(e: u64) -> BigNat {
    BigNat::one() << e
}

/// Converts `num / den` to the nearest-ish `f64` by scaled integer division.
///
/// The quotient is computed with 64 significant bits before conversion, so the
/// relative error stays well under `2^-50` no matter how large the operands are.
pub fn ratio_to_f64(num: &BigNat, den: &BigNat) -> f64 {
    assert!(!den.is_zero(), "ratio with zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    // choose shift so the quotient has about 64 bits
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = q.to_f64().expect("quotient fits in f64");
    scale_by_pow2(q, -shift)
}

/// Signed variant of [`ratio_to_f64`].
pub fn rational_to_f64(r: &BigRat) -> f64 {
    let mag = ratio_to_f64(r.numer().magnitude(), r.denom().magnitude());
    if r.numer().sign() == num_bigint::Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn scale_by_pow2(mut x: f64, mut e: i64) -> f64 {
    // stepwise so intermediate powers never overflow or flush to zero early
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigNat::from(10u32));
        assert_eq!(binomial(0, 0), BigNat::one());
        assert_eq!(binomial(60, 30), BigNat::from(118264581564861424u64));
    }

    #[test]
    fn binomial_zero_extension() {
        assert!(binomial(3, -1).is_zero());
        assert!(binomial(2, 4).is_zero());
        assert!(binomial(-1, 0).is_zero());
        assert!(binomial(-5, -7).is_zero());
    }

    #[test]
    fn pascal_rule_with_boundaries() {
        // (0, 0) is the one point where the negative-n extension breaks the rule
        for n in 1..=60i64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn catalan_anchor_values() {
        assert_eq!(catalan(0).unwrap(), BigNat::from(1u32));
        assert_eq!(catalan(4).unwrap(), BigNat::from(14u32));
        assert_eq!(catalan(5).unwrap(), BigNat::from(42u32));
        assert_eq!(catalan(10).unwrap(), BigNat::from(16796u32));
    }

    #[test]
    fn catalan_matches_binomial_closed_form() {
        for n in 0..=80i64 {
            let direct = binomial(2 * n, n) / BigNat::from((n + 1) as u64);
            assert_eq!(catalan(n).unwrap(), direct, "S_{n}");
        }
    }

    #[test]
    fn catalan_rejects_negative() {
        assert!(matches!(catalan(-1), Err(Error::Argument(_))));
    }

    #[test]
    fn recursion_residual_vanishes() {
        for k in 1..=60 {
            assert!(catalan_recursion_residual(k).unwrap().is_zero(), "k={k}");
        }
        assert!(catalan_recursion_residual(0).is_err());
    }

    #[test]
    fn catalan_growth_bounded_by_four() {
        for n in 1..=200i64 {
            let prev = catalan(n - 1).unwrap();
            let cur = catalan(n).unwrap();
            if n >= 2 {
                assert!(cur > prev, "strictly increasing at {n}");
            }
            assert!(cur < prev * 4u32, "ratio below 4 at {n}");
        }
    }

    #[test]
    fn catalan_concurrent_fill() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || catalan(300 + t).unwrap()))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            let got = h.join().unwrap();
            let n = 300 + t as i64;
            assert_eq!(got, binomial(2 * n, n) / BigNat::from((n + 1) as u64));
        }
    }

    #[test]
    fn ratio_conversion() {
        assert_eq!(ratio_to_f64(&BigNat::from(15u32), &BigNat::from(25u32)), 0.6);
        let big = pow2(5000);
        let r = ratio_to_f64(&(&big * 3u32), &(&big * 4u32));
        assert_eq!(r, 0.75);
        let tiny = ratio_to_f64(&BigNat::one(), &pow2(1050));
        assert!(tiny > 0.0 && tiny < 1e-300);
        let third = ratio_to_f64(&BigNat::from(1u32), &BigNat::from(3u32));
        assert!((third - 1.0 / 3.0).abs() < 1e-16);
    }
}
