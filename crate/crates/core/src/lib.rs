//! Balls-in-boxes digit ensembles, first-digit laws, and leading-digit
//! conformance analysis.
//!
//! The crate has three layers:
//!
//! - [`combinatorics`]: exact counting, enumeration, digit tallies, and
//!   uniform sampling of equal-probability configurations of
//!   indistinguishable balls in capacity-limited boxes.
//! - [`entropy`]: the analytic pipeline: Stirling-approximated entropy,
//!   Lagrange occupancy weights, their normalization, and the general-base
//!   first-digit (Benford) distribution, with numerical checks for each
//!   derivation step.
//! - [`analysis`]: leading-digit extraction in arbitrary bases, dataset
//!   ingestion and generation, and conformance scoring (chi-square, MAD,
//!   KL divergence) against Benford and uniform references, the
//!   fraud-detection side of the story.
//!
//! All counts are exact big integers; all probabilities are 64-bit floats
//! with tolerances documented per function.

use num_bigint::BigUint;
use thiserror::Error;

pub mod analysis;
pub mod combinatorics;
pub mod entropy;
pub mod special;

pub use analysis::*;
pub use combinatorics::*;
pub use entropy::*;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid box specification: {0}")]
    InvalidBoxSpec(&'static str),

    #[error("{count} configurations exceed the enumeration limit of {limit}; instance too large — use the closed-form tally or sampling, or raise the limit")]
    EnumerationTooLarge { count: BigUint, limit: u64 },

    #[error("empty ensemble: no configuration can hold {balls} balls in {boxes} boxes of capacity {cap}")]
    EmptyEnsemble { boxes: u64, balls: u64, cap: u64 },

    #[error("no non-zero digits to tally")]
    EmptyTally,

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("number base must be between 2 and 2^32, got {0}")]
    InvalidBase(u64),

    #[error("beta must be a positive finite real, got {0}")]
    InvalidBeta(f64),

    #[error("digit must be at least 1")]
    InvalidDigit,

    #[error("step must lie in (0, 1e-3], got {0}")]
    InvalidStep(f64),

    #[error("evaluation point must exceed the step size: n = {n}, step = {step}")]
    InvalidEvaluationPoint { n: f64, step: f64 },

    #[error("mean occupancy must be a positive finite real, got {0}")]
    InvalidMeanOccupancy(f64),

    #[error("invalid digit distribution: {0}")]
    InvalidDistribution(String),

    #[error("cannot take the leading digit of zero")]
    ZeroValue,

    #[error("cannot take the leading digit of a non-finite value ({0})")]
    NonFiniteValue(f64),

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u64, right: u64 },

    #[error("histogram has no observations")]
    EmptyHistogram,

    #[error("reference probability for digit {digit} is not strictly positive")]
    NonPositiveReference { digit: u64 },

    #[error("invalid sequence specification: {0}")]
    InvalidSequence(String),

    #[error("sequence would reach about {estimated_digits} decimal digits, over the rendering budget of {budget}")]
    DigitBudgetExceeded { estimated_digits: u64, budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
