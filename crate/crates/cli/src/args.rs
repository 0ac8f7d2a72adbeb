//! Command-line definitions. Every flag is validated before any
//! computation runs; unknown flags are usage errors.

use std::num::NonZeroUsize;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "benford",
    version,
    about = "Digit-ensemble combinatorics, first-digit laws, and leading-digit conformance analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Ball-and-box ensemble flags shared by the counting subcommands. The
/// per-box cap is `base − 1`: occupancies read as digits of that base.
#[derive(Args, Debug, Clone, Copy)]
pub struct EnsembleArgs {
    /// Number of boxes (digit positions), N
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub boxes: u64,

    /// Number of balls, P
    #[arg(long)]
    pub balls: u64,

    /// Number base B; the per-box cap is B-1
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub base: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Formats for subcommands that emit a digit distribution, where an ASCII
/// bar chart makes sense.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFormat {
    Table,
    Json,
    Csv,
    Chart,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenFormat {
    Lines,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TallyMethod {
    /// Walk every configuration (subject to the enumeration limit)
    Enum,
    /// Closed-form position-symmetry count; scales to any ensemble
    Closed,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceName {
    Fibonacci,
    Primes,
    Powers,
    Lognormal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the first-digit distribution for a base
    Dist {
        /// Number base B (digits 1..B-1)
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        base: u64,

        /// Lagrange multiplier for the occupancy-weight route; it divides
        /// out under normalization, so any positive value emits identical
        /// results
        #[arg(long)]
        beta: Option<f64>,

        #[arg(long, value_enum, default_value_t = ChartFormat::Table)]
        format: ChartFormat,
    },

    /// Exact number of configurations of the ensemble
    Count {
        #[command(flatten)]
        ensemble: EnsembleArgs,

        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },

    /// List every configuration in descending lexicographic order
    Enumerate {
        #[command(flatten)]
        ensemble: EnsembleArgs,

        /// Proceed even above the 10^7-configuration guard
        #[arg(long)]
        force: bool,

        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },

    /// Count how often each non-zero digit occurs across all configurations
    Tally {
        #[command(flatten)]
        ensemble: EnsembleArgs,

        #[arg(long, value_enum, default_value_t = TallyMethod::Closed)]
        method: TallyMethod,

        /// Proceed even above the 10^7-configuration guard (enum method)
        #[arg(long)]
        force: bool,

        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },

    /// Estimate the ensemble digit distribution by uniform sampling
    Sample {
        #[command(flatten)]
        ensemble: EnsembleArgs,

        /// Number of configurations to draw
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,

        /// Seed for the deterministic generator
        #[arg(long, default_value_t = 0)]
        seed: u64,

        #[arg(long, value_enum, default_value_t = ChartFormat::Table)]
        format: ChartFormat,
    },

    /// Compare the entropy approximation against the exact log-count
    Stirling {
        /// Mean occupancy n̄ = P/N held fixed across rows
        #[arg(long)]
        mean_occupancy: f64,

        /// Comma-separated box counts, one table row each
        #[arg(long, value_delimiter = ',', required = true)]
        boxes: Vec<u64>,

        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },

    /// Finite-difference check of the occupancy-weight relation
    Stationarity {
        /// Evaluation point (mean occupancy, real-valued)
        #[arg(long)]
        n: f64,

        /// Lagrange multiplier
        #[arg(long)]
        beta: f64,

        /// Centered-difference step, in (0, 1e-3]
        #[arg(long)]
        step: f64,

        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },

    /// Generate a reference sequence (one value per line by default)
    Gen {
        #[arg(long, value_enum)]
        kind: SequenceName,

        /// How many values to generate
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,

        /// Seed for the lognormal generator
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Base b for --kind powers (emits b^1..b^count)
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
        power_base: u64,

        /// Lognormal location parameter
        #[arg(long, default_value_t = 0.0)]
        mu: f64,

        /// Lognormal shape parameter
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,

        /// Ceiling on the decimal width of generated integers
        #[arg(long, default_value_t = benford_core::DEFAULT_DIGIT_BUDGET)]
        max_digits: u64,

        #[arg(long, value_enum, default_value_t = GenFormat::Lines)]
        format: GenFormat,
    },

    /// Score a dataset's leading digits against Benford and uniform
    Analyze {
        /// Input path, or "-" for standard input
        #[arg(long)]
        input: String,

        /// 1-based column to read from delimited input
        #[arg(long)]
        column: Option<NonZeroUsize>,

        /// Field delimiter used with --column
        #[arg(long, default_value_t = ',')]
        delimiter: char,

        /// Number base for digit extraction
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        base: u64,

        #[arg(long, value_enum, default_value_t = ChartFormat::Table)]
        format: ChartFormat,
    },
}
