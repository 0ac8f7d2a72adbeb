//! Deterministic test-sequence generators: exact-integer Fibonacci numbers,
//! primes, and powers, plus a seeded lognormal source.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NumericDataset;
use crate::{Error, Result};

/// Ceiling on the estimated decimal width of the largest generated value;
/// integer sequences are rendered in full, so this bounds output size.
pub const DEFAULT_DIGIT_BUDGET: u64 = 100_000;

/// What to generate. Integer kinds are produced with exact arithmetic so
/// their leading digits are exact at any length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SequenceKind {
    /// 1, 1, 2, 3, 5, 8, ...
    Fibonacci,
    /// 2, 3, 5, 7, 11, ...
    Primes,
    /// base^1, base^2, ...
    Powers { base: u64 },
    /// exp(mu + sigma·Z) with Z standard normal; deterministic per seed.
    LogNormal { mu: f64, sigma: f64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub count: u64,
}

/// Generates a sequence under the default digit budget.
pub fn generate_sequence(spec: &SequenceSpec) -> Result<NumericDataset> {
    generate_sequence_with_budget(spec, DEFAULT_DIGIT_BUDGET)
}

/// Generates a sequence, rejecting specs whose largest value would exceed
/// `budget_digits` decimal digits.
pub fn generate_sequence_with_budget(
    spec: &SequenceSpec,
    budget_digits: u64,
) -> Result<NumericDataset> {
    if spec.count == 0 {
        return Err(Error::InvalidSequence("count must be at least 1".into()));
    }
    check_budget(spec, budget_digits)?;
    match spec.kind {
        SequenceKind::Fibonacci => Ok(fibonacci(spec.count)),
        SequenceKind::Primes => Ok(primes(spec.count)),
        SequenceKind::Powers { base } => {
            if base < 2 {
                return Err(Error::InvalidSequence(format!(
                    "power base must be at least 2, got {base}"
                )));
            }
            Ok(powers(base, spec.count))
        }
        SequenceKind::LogNormal { mu, sigma, seed } => {
            if !mu.is_finite() || !sigma.is_finite() || sigma < 0.0 {
                return Err(Error::InvalidSequence(format!(
                    "lognormal parameters must be finite with sigma >= 0, got mu={mu}, sigma={sigma}"
                )));
            }
            Ok(lognormal(mu, sigma, seed, spec.count))
        }
    }
}

fn check_budget(spec: &SequenceSpec, budget_digits: u64) -> Result<()> {
    // Decimal width of the largest term: count·log10(φ) for Fibonacci,
    // count·log10(base) for powers. Primes and lognormal stay word-sized.
    let estimated = match spec.kind {
        SequenceKind::Fibonacci => {
            const LOG10_GOLDEN_RATIO: f64 = 0.20898764024997873;
            (spec.count as f64 * LOG10_GOLDEN_RATIO).ceil() as u64 + 1
        }
        SequenceKind::Powers { base } => {
            (spec.count as f64 * (base.max(2) as f64).log10()).ceil() as u64 + 1
        }
        SequenceKind::Primes | SequenceKind::LogNormal { .. } => 0,
    };
    if estimated > budget_digits {
        return Err(Error::DigitBudgetExceeded {
            estimated_digits: estimated,
            budget: budget_digits,
        });
    }
    Ok(())
}

fn fibonacci(count: u64) -> NumericDataset {
    let mut dataset = NumericDataset::from_values([], &format!("fibonacci(count={count})"));
    let mut a = BigUint::one();
    let mut b = BigUint::one();
    for _ in 0..count {
        dataset.push_exact(a.clone());
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    dataset
}

fn primes(count: u64) -> NumericDataset {
    let mut dataset = NumericDataset::from_values([], &format!("primes(count={count})"));
    let mut found: Vec<u64> = Vec::with_capacity(count as usize);
    let mut candidate: u64 = 2;
    while (found.len() as u64) < count {
        let is_prime = found
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p));
        if is_prime {
            found.push(candidate);
            dataset.push_exact(BigUint::from(candidate));
        }
        candidate += if candidate == 2 { 1 } else { 2 };
    }
    dataset
}

fn powers(base: u64, count: u64) -> NumericDataset {
    let mut dataset =
        NumericDataset::from_values([], &format!("powers(base={base},count={count})"));
    let mut value = BigUint::from(base);
    for _ in 0..count {
        dataset.push_exact(value.clone());
        value *= base;
    }
    dataset
}

fn lognormal(mu: f64, sigma: f64, seed: u64, count: u64) -> NumericDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dataset = NumericDataset::from_values(
        [],
        &format!("lognormal(mu={mu},sigma={sigma},seed={seed},count={count})"),
    );
    for _ in 0..count {
        // Box-Muller; u1 shifted into (0, 1] so the logarithm is finite.
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        dataset.push_real((mu + sigma * z).exp());
    }
    dataset
}
