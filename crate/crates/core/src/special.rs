//! Shared numeric kernels: exact binomial coefficients and floating-point
//! logarithms of factorials and big integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact binomial coefficient C(n, k).
///
/// Multiplicative formula; every intermediate division is exact, so the
/// result is never touched by floating point.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// ln(n!): exact table route for n ≤ 20, Stirling series beyond.
///
/// The series is truncated after the 1/(1680 n⁷) term, which keeps the
/// relative error below 1e-15 for every n > 20.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        let exact: u64 = (2..=n).product::<u64>().max(1);
        return (exact as f64).ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let tail = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + tail
}

/// ln C(n, k) through `ln_factorial`; −∞ when k > n (an empty choice).
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Natural logarithm of a positive big integer.
///
/// Uses the top 53 bits as the mantissa and accounts for the shifted-away
/// bits as a multiple of ln 2; accurate to a few ulps even for integers
/// with millions of bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln_biguint: argument must be positive");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit integer fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use std::str::FromStr;

    fn factorial_big(n: u64) -> BigUint {
        (2..=n).fold(BigUint::one(), |acc, i| acc * i)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(17, 12), BigUint::from(6188u32));
    }

    #[test]
    fn binomial_large_values() {
        // Reference values from independent big-integer computations.
        assert_eq!(
            binomial(100, 49),
            BigUint::from_str("98913082887808032681188722800").unwrap()
        );
        assert_eq!(
            binomial(1000, 42),
            BigUint::from_str(
                "297242911333923795640059429176065863139989673213703918037987737481286092000"
            )
            .unwrap()
        );
    }

    #[test]
    fn binomial_pascal_identity() {
        for n in 2..=30u64 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn ln_factorial_matches_exact_logarithm() {
        for n in [0u64, 1, 2, 5, 10, 20, 21, 25, 50, 100, 777, 2000] {
            let expected = if n <= 1 {
                0.0
            } else {
                ln_biguint(&factorial_big(n))
            };
            let got = ln_factorial(n);
            let tol = 1e-13 * expected.abs().max(1.0);
            assert!(
                (got - expected).abs() <= tol,
                "ln {n}! = {got}, expected {expected}"
            );
        }
    }

    #[test]
    fn ln_binomial_agrees_with_big_integer_route() {
        for &(n, k) in &[(5u64, 2u64), (100, 49), (2999, 2000), (4000, 123)] {
            let exact = ln_biguint(&binomial(n, k));
            let fast = ln_binomial(n, k);
            assert!(
                (fast - exact).abs() <= 1e-11 * exact.abs().max(1.0),
                "ln C({n},{k}): {fast} vs {exact}"
            );
        }
        assert_eq!(ln_binomial(3, 7), f64::NEG_INFINITY);
    }

    #[test]
    fn ln_biguint_small_and_shifted() {
        assert_eq!(ln_biguint(&BigUint::one()), 0.0);
        let x = BigUint::from(10u32);
        assert!((ln_biguint(&x) - 10f64.ln()).abs() < 1e-15);
        // 2^200: logarithm must be exactly 200 ln 2 within a few ulps.
        let big = BigUint::one() << 200;
        let expected = 200.0 * std::f64::consts::LN_2;
        assert!((ln_biguint(&big) - expected).abs() < 1e-12);
    }
}
