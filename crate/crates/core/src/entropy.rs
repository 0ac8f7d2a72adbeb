//! The analytic pipeline: Stirling-approximated configuration entropy,
//! Lagrange occupancy weights, their normalization, and the general-base
//! first-digit law, plus numerical checks of the derivation steps.

use std::collections::BTreeMap;

use crate::special::{binomial, ln_biguint, ln_binomial};
use crate::{Error, Result};

/// Tolerance on "probabilities sum to one" checks throughout the crate.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// Relative errors are reported against `max(exact, RELATIVE_ERROR_FLOOR)`
/// so that a zero exact value does not divide by zero.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-12;

/// A positional-notation base `B ≥ 2`. Digits are `0..B−1`; the non-zero
/// digits `1..B−1` are the ones that can lead a numeral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberBase(u64);

impl NumberBase {
    pub fn new(value: u64) -> Result<Self> {
        if !(2..=1 << 32).contains(&value) {
            return Err(Error::InvalidBase(value));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Highest digit value, `B − 1`; doubles as the per-box capacity of the
    /// matching ball-and-box ensemble.
    pub fn cap(self) -> u64 {
        self.0 - 1
    }

    /// The non-zero digits `1..=B−1` in increasing order.
    pub fn nonzero_digits(self) -> impl Iterator<Item = u64> {
        1..self.0
    }
}

impl std::fmt::Display for NumberBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A probability distribution over the non-zero digits of a base: the
/// first-digit law, a uniform reference, or an empirical estimate.
///
/// Every digit `1..B−1` is present as a key. Probabilities lie in `[0, 1]`
/// and sum to one within [`PROBABILITY_SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct DigitDistribution {
    base: NumberBase,
    probabilities: BTreeMap<u64, f64>,
}

impl DigitDistribution {
    pub fn new(base: NumberBase, probabilities: BTreeMap<u64, f64>) -> Result<Self> {
        let expected: Vec<u64> = base.nonzero_digits().collect();
        let keys: Vec<u64> = probabilities.keys().copied().collect();
        if keys != expected {
            return Err(Error::InvalidDistribution(format!(
                "digit keys must be exactly 1..{} for base {}",
                base.cap(),
                base
            )));
        }
        let mut sum = 0.0;
        for (&digit, &p) in &probabilities {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidDistribution(format!(
                    "probability for digit {digit} is {p}, outside [0, 1]"
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(Self {
            base,
            probabilities,
        })
    }

    /// The first-digit law for the base: ρ(n) = log_B(1 + 1/n).
    pub fn benford(base: NumberBase) -> Self {
        let ln_base = (base.value() as f64).ln();
        let probabilities = base
            .nonzero_digits()
            .map(|n| (n, digit_log_ratio(n) / ln_base))
            .collect();
        Self {
            base,
            probabilities,
        }
    }

    /// The unbiased-lottery reference: ρ(n) = 1/(B−1).
    pub fn uniform(base: NumberBase) -> Self {
        let p = 1.0 / base.cap() as f64;
        let probabilities = base.nonzero_digits().map(|n| (n, p)).collect();
        Self {
            base,
            probabilities,
        }
    }

    pub fn base(&self) -> NumberBase {
        self.base
    }

    /// Probability of `digit`; 0 for digits outside `1..B−1`.
    pub fn probability(&self, digit: u64) -> f64 {
        self.probabilities.get(&digit).copied().unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> &BTreeMap<u64, f64> {
        &self.probabilities
    }
}

/// ln((n+1)/n) for a digit n ≥ 1, evaluated as ln(1 + 1/n) to keep full
/// precision for large digits.
fn digit_log_ratio(n: u64) -> f64 {
    (1.0 / n as f64).ln_1p()
}

/// Like [`digit_log_ratio`] but at a real-valued occupancy; used by the
/// stationarity check, which probes between the integer digits.
fn log_ratio_at(n: f64) -> f64 {
    (1.0 / n).ln_1p()
}

fn validate_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidBeta(beta));
    }
    Ok(())
}

/// First-digit (Benford) distribution for the base: ρ(n) = log_B(1 + 1/n).
///
/// Base validity (B ≥ 2) is enforced when the [`NumberBase`] is built, so
/// this cannot fail.
pub fn benford_distribution(base: NumberBase) -> DigitDistribution {
    DigitDistribution::benford(base)
}

/// Uniform distribution over non-zero digits, the fabricated-data signature.
pub fn uniform_distribution(base: NumberBase) -> DigitDistribution {
    DigitDistribution::uniform(base)
}

/// Occupancy weights φ(n) = (1/β)·ln((n+1)/n) for all digits of a base,
/// with the telescoping sum Σφ(n) = ln(B)/β available via [`OccupancyWeights::sum`].
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyWeights {
    base: NumberBase,
    beta: f64,
    weights: BTreeMap<u64, f64>,
}

impl OccupancyWeights {
    pub fn base(&self) -> NumberBase {
        self.base
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn weights(&self) -> &BTreeMap<u64, f64> {
        &self.weights
    }

    pub fn weight(&self, digit: u64) -> f64 {
        self.weights.get(&digit).copied().unwrap_or(0.0)
    }

    /// Σφ(n); telescopes to ln(B)/β.
    pub fn sum(&self) -> f64 {
        self.weights.values().sum()
    }
}

/// One occupancy weight φ(n) = (1/β)·ln((n+1)/n).
///
/// Rejects n = 0 (empty boxes carry no digit) and non-positive β.
pub fn occupancy_weight(n: u64, beta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDigit);
    }
    validate_beta(beta)?;
    Ok(digit_log_ratio(n) / beta)
}

/// Occupancy weights for every non-zero digit of the base.
pub fn occupancy_weights(beta: f64, base: NumberBase) -> Result<OccupancyWeights> {
    validate_beta(beta)?;
    let weights = base
        .nonzero_digits()
        .map(|n| (n, digit_log_ratio(n) / beta))
        .collect();
    Ok(OccupancyWeights {
        base,
        beta,
        weights,
    })
}

/// Normalized occupancy distribution ρ(n) = φ(n)/Σφ(n).
///
/// Every weight carries the same 1/β factor, so β divides out of the
/// ratio; we normalize the unscaled log-ratios directly, which makes the
/// result bit-for-bit independent of β. The multiplier is still validated,
/// since a non-positive β has no meaning here.
pub fn normalize_weights(beta: f64, base: NumberBase) -> Result<DigitDistribution> {
    validate_beta(beta)?;
    let weights: Vec<(u64, f64)> = base
        .nonzero_digits()
        .map(|n| (n, digit_log_ratio(n)))
        .collect();
    let sum: f64 = weights.iter().map(|(_, w)| w).sum();
    let probabilities = weights.into_iter().map(|(n, w)| (n, w / sum)).collect();
    DigitDistribution::new(base, probabilities)
}

/// Per-box entropy density s(n̄) = (1+n̄)·ln(1+n̄) − n̄·ln n̄, with the
/// n̄ = 0 case taking the limit value 0.
pub fn entropy_density(mean_occupancy: f64) -> f64 {
    let n = mean_occupancy;
    if n == 0.0 {
        return 0.0;
    }
    (1.0 + n) * (1.0 + n).ln() - n * n.ln()
}

/// Stirling approximation of the configuration entropy ln Ω:
/// N·[(1+n̄)·ln(1+n̄) − n̄·ln n̄] with n̄ = P/N.
pub fn stirling_entropy(boxes: u64, balls: u64) -> f64 {
    assert!(boxes >= 1, "stirling_entropy: boxes must be at least 1");
    boxes as f64 * entropy_density(balls as f64 / boxes as f64)
}

/// ln Ω for the uncapped ensemble, Ω = C(N+P−1, P), through the
/// log-factorial route. Good to 12 significant digits for N, P up to 10^6.
pub fn exact_log_count(boxes: u64, balls: u64) -> f64 {
    assert!(boxes >= 1, "exact_log_count: boxes must be at least 1");
    ln_binomial(boxes + balls - 1, balls)
}

/// Same value through exact big-integer arithmetic. Slower; kept as the
/// independent cross-check for [`exact_log_count`].
pub fn exact_log_count_bigint(boxes: u64, balls: u64) -> f64 {
    assert!(
        boxes >= 1,
        "exact_log_count_bigint: boxes must be at least 1"
    );
    ln_biguint(&binomial(boxes + balls - 1, balls))
}

/// Residual of the stationarity relation s′(n) = β·φ(n): the absolute gap
/// between a centered finite difference of [`entropy_density`] at `n` and
/// β·φ(n, β). Second order in `step`.
///
/// Rejects steps outside (0, 1e-3] and points with n ≤ step (the centered
/// stencil would cross zero).
pub fn stationarity_check(n: f64, beta: f64, step: f64) -> Result<f64> {
    validate_beta(beta)?;
    if !step.is_finite() || step <= 0.0 || step > 1e-3 {
        return Err(Error::InvalidStep(step));
    }
    if !n.is_finite() || n <= step {
        return Err(Error::InvalidEvaluationPoint { n, step });
    }
    let finite_difference = (entropy_density(n + step) - entropy_density(n - step)) / (2.0 * step);
    let analytic = beta * (log_ratio_at(n) / beta);
    Ok((finite_difference - analytic).abs())
}

/// One row of the Stirling-vs-exact comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub boxes: u64,
    pub balls: u64,
    pub stirling_value: f64,
    pub exact_value: f64,
    pub relative_error: f64,
}

/// Stirling-vs-exact entropy at fixed mean occupancy across box counts:
/// one [`EntropyEstimate`] per entry of `box_counts`, with P = round(n̄·N).
pub fn entropy_convergence_table(
    mean_occupancy: f64,
    box_counts: &[u64],
) -> Result<Vec<EntropyEstimate>> {
    if !mean_occupancy.is_finite() || mean_occupancy <= 0.0 {
        return Err(Error::InvalidMeanOccupancy(mean_occupancy));
    }
    let mut rows = Vec::with_capacity(box_counts.len());
    for &boxes in box_counts {
        if boxes == 0 {
            return Err(Error::InvalidBoxSpec("boxes must be at least 1"));
        }
        let balls = (mean_occupancy * boxes as f64).round() as u64;
        let stirling_value = stirling_entropy(boxes, balls);
        let exact_value = exact_log_count(boxes, balls);
        let relative_error =
            (stirling_value - exact_value).abs() / exact_value.max(RELATIVE_ERROR_FLOOR);
        rows.push(EntropyEstimate {
            boxes,
            balls,
            stirling_value,
            exact_value,
            relative_error,
        });
    }
    Ok(rows)
}
