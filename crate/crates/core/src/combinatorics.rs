//! Exact counting, enumeration, digit tallying, and uniform sampling of
//! equal-probability configurations of `balls` indistinguishable balls in
//! `boxes` distinguishable boxes, each holding at most `cap` balls.
//!
//! A configuration is an ordered occupancy vector; reading each occupancy
//! as a digit makes a configuration a numeral of base `cap + 1`. Counting
//! how often each non-zero digit appears across all configurations of an
//! ensemble is what the digit tallies do.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entropy::{DigitDistribution, NumberBase};
use crate::special::{binomial, ln_biguint};
use crate::{Error, Result};

/// Streaming refuses above this many configurations unless the caller
/// raises the limit; closed-form tallying and sampling cover the rest.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// An exact configuration count Ω. Always an arbitrary-precision integer;
/// no floating point anywhere in the counting paths.
pub type ConfigCount = BigUint;

/// Ensemble parameters: `boxes` distinguishable boxes (N), `balls`
/// indistinguishable balls (P), and a per-box capacity `cap` (B − 1).
///
/// `balls` may exceed `boxes × cap`; such a spec simply has zero
/// configurations. Each field is limited to `u32::MAX` so that index
/// arithmetic in the counting formulas cannot overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxSpec {
    boxes: u64,
    balls: u64,
    cap: u64,
}

impl BoxSpec {
    pub fn new(boxes: u64, balls: u64, cap: u64) -> Result<Self> {
        if boxes == 0 {
            return Err(Error::InvalidBoxSpec("boxes must be at least 1"));
        }
        if cap == 0 {
            return Err(Error::InvalidBoxSpec("cap must be at least 1"));
        }
        if boxes > u32::MAX as u64 || balls > u32::MAX as u64 || cap > u32::MAX as u64 {
            return Err(Error::InvalidBoxSpec(
                "boxes, balls, and cap must each fit in 32 bits",
            ));
        }
        Ok(Self { boxes, balls, cap })
    }

    /// Spec for numerals: `boxes` digit positions of the given base, so the
    /// per-box capacity is B − 1.
    pub fn for_base(boxes: u64, balls: u64, base: NumberBase) -> Result<Self> {
        Self::new(boxes, balls, base.cap())
    }

    pub fn boxes(&self) -> u64 {
        self.boxes
    }

    pub fn balls(&self) -> u64 {
        self.balls
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// True when no configuration can hold all the balls.
    pub fn is_overfull(&self) -> bool {
        self.balls as u128 > self.boxes as u128 * self.cap as u128
    }
}

/// One configuration (microstate): ordered per-box occupancies, each at
/// most `cap`, summing to `balls`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn new(occupancies: Vec<u64>, spec: &BoxSpec) -> Result<Self> {
        if occupancies.len() as u64 != spec.boxes {
            return Err(Error::InvalidBoxSpec(
                "occupancy vector length must equal boxes",
            ));
        }
        if occupancies.iter().any(|&d| d > spec.cap) {
            return Err(Error::InvalidBoxSpec("occupancy exceeds the per-box cap"));
        }
        if occupancies.iter().sum::<u64>() != spec.balls {
            return Err(Error::InvalidBoxSpec("occupancies must sum to balls"));
        }
        Ok(Self(occupancies))
    }

    pub fn occupancies(&self) -> &[u64] {
        &self.0
    }

    /// The non-zero entries: the digits that actually get counted.
    pub fn nonzero(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied().filter(|&d| d != 0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Exact number of occupancy vectors of length `boxes`, entries in
/// `[0, cap]`, summing to `balls`.
///
/// Equals C(boxes+balls−1, balls) whenever `cap ≥ balls`; 0 when the spec
/// is overfull. Total on every valid [`BoxSpec`].
pub fn count_compositions(spec: &BoxSpec) -> ConfigCount {
    count_bounded(spec.boxes, spec.balls, spec.cap)
}

/// Bounded-composition count by inclusion-exclusion over the boxes forced
/// past the cap:
///
/// Ω(N, P, c) = Σ_j (−1)^j · C(N, j) · C(N + P − 1 − j(c+1), N − 1),
///
/// terms with a negative upper argument dropping out.
pub(crate) fn count_bounded(boxes: u64, balls: u64, cap: u64) -> BigUint {
    if balls == 0 {
        return BigUint::one();
    }
    if boxes == 0 || balls as u128 > boxes as u128 * cap as u128 {
        return BigUint::zero();
    }
    if cap >= balls {
        return binomial(boxes + balls - 1, balls);
    }
    let step = cap + 1;
    let j_max = (balls / step).min(boxes);
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    for j in 0..=j_max {
        let rest = balls - j * step;
        let term = binomial(boxes, j) * binomial(boxes + rest - 1, boxes - 1);
        if j % 2 == 0 {
            positive += term;
        } else {
            negative += term;
        }
    }
    positive - negative
}

/// Stream of every configuration of a spec, in descending lexicographic
/// order of the occupancy vectors.
#[derive(Debug)]
pub struct Compositions {
    cap: u64,
    state: Option<Vec<u64>>,
}

impl Compositions {
    fn new(spec: &BoxSpec) -> Self {
        let state = if spec.is_overfull() {
            None
        } else {
            // Lexicographically largest configuration: fill from the left.
            let mut v = vec![0u64; spec.boxes as usize];
            let mut rest = spec.balls;
            for slot in &mut v {
                let take = rest.min(spec.cap);
                *slot = take;
                rest -= take;
            }
            Some(v)
        };
        Self {
            cap: spec.cap,
            state,
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.state.take()?;
        let n = current.len();
        // Descending-lex successor: move one ball out of the rightmost
        // position whose suffix can absorb it, then refill the suffix
        // as large as possible.
        let mut suffix_sum = 0u64;
        for j in (0..n.saturating_sub(1)).rev() {
            suffix_sum += current[j + 1];
            if current[j] > 0 && suffix_sum < (n - 1 - j) as u64 * self.cap {
                let mut next = current.clone();
                next[j] -= 1;
                let mut rest = suffix_sum + 1;
                for slot in &mut next[j + 1..] {
                    let take = rest.min(self.cap);
                    *slot = take;
                    rest -= take;
                }
                debug_assert_eq!(rest, 0);
                self.state = Some(next);
                break;
            }
        }
        Some(Composition(current))
    }
}

/// Streams every configuration exactly once (descending lexicographic
/// order), refusing instances above [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate_compositions(spec: &BoxSpec) -> Result<Compositions> {
    enumerate_compositions_with_limit(spec, DEFAULT_ENUMERATION_LIMIT)
}

/// [`enumerate_compositions`] with an explicit configuration limit.
pub fn enumerate_compositions_with_limit(spec: &BoxSpec, limit: u64) -> Result<Compositions> {
    let count = count_compositions(spec);
    if count > BigUint::from(limit) {
        return Err(Error::EnumerationTooLarge { count, limit });
    }
    Ok(Compositions::new(spec))
}

/// Occurrence counts of each non-zero digit across an ensemble, with the
/// grand total of non-zero entries. Digits that never occur carry no key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitTally {
    counts: BTreeMap<u64, BigUint>,
    total: BigUint,
}

impl DigitTally {
    fn from_counts(counts: BTreeMap<u64, BigUint>) -> Self {
        let counts: BTreeMap<u64, BigUint> =
            counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let total = counts.values().sum();
        Self { counts, total }
    }

    pub fn counts(&self) -> &BTreeMap<u64, BigUint> {
        &self.counts
    }

    pub fn count(&self, digit: u64) -> BigUint {
        self.counts.get(&digit).cloned().unwrap_or_default()
    }

    /// Number of non-zero box entries summed over all configurations.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// counts[d]/total as floats. Falls back to log-space division when the
    /// integers overflow f64.
    pub fn ratios(&self) -> BTreeMap<u64, f64> {
        self.counts
            .iter()
            .map(|(&d, c)| (d, big_ratio(c, &self.total)))
            .collect()
    }

    /// The tally normalized into a distribution over the non-zero digits of
    /// `base`, absent digits filling in as zero probability.
    pub fn to_distribution(&self, base: NumberBase) -> Result<DigitDistribution> {
        if self.total.is_zero() {
            return Err(Error::EmptyTally);
        }
        if let Some((&digit, _)) = self.counts.iter().next_back() {
            if digit > base.cap() {
                return Err(Error::DigitOutOfRange {
                    digit,
                    base: base.value(),
                });
            }
        }
        let ratios = self.ratios();
        let probabilities = base
            .nonzero_digits()
            .map(|d| (d, ratios.get(&d).copied().unwrap_or(0.0)))
            .collect();
        DigitDistribution::new(base, probabilities)
    }
}

fn big_ratio(numerator: &BigUint, denominator: &BigUint) -> f64 {
    if numerator.is_zero() {
        return 0.0;
    }
    let n = numerator.to_f64().unwrap_or(f64::INFINITY);
    let d = denominator.to_f64().unwrap_or(f64::INFINITY);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        (ln_biguint(numerator) - ln_biguint(denominator)).exp()
    }
}

/// Tallies digits the direct way: walk every configuration and count each
/// non-zero entry. Subject to the same limit as enumeration.
pub fn tally_digits_by_enumeration(spec: &BoxSpec) -> Result<DigitTally> {
    tally_digits_by_enumeration_with_limit(spec, DEFAULT_ENUMERATION_LIMIT)
}

/// [`tally_digits_by_enumeration`] with an explicit configuration limit.
pub fn tally_digits_by_enumeration_with_limit(spec: &BoxSpec, limit: u64) -> Result<DigitTally> {
    let mut counts: BTreeMap<u64, u128> = BTreeMap::new();
    for composition in enumerate_compositions_with_limit(spec, limit)? {
        for digit in composition.nonzero() {
            *counts.entry(digit).or_insert(0) += 1;
        }
    }
    Ok(DigitTally::from_counts(
        counts
            .into_iter()
            .map(|(d, c)| (d, BigUint::from(c)))
            .collect(),
    ))
}

/// Closed-form tally: by symmetry over box positions,
/// counts[d] = N · Ω(N−1, P−d, cap), the number of (configuration, box)
/// pairs in which the box holds exactly d balls. Matches the enumeration
/// tally exactly and scales far beyond streaming range.
pub fn tally_digits_closed_form(spec: &BoxSpec) -> DigitTally {
    let mut counts = BTreeMap::new();
    for digit in 1..=spec.cap.min(spec.balls) {
        let per_box = count_bounded(spec.boxes - 1, spec.balls - digit, spec.cap);
        let count = per_box * spec.boxes;
        if !count.is_zero() {
            counts.insert(digit, count);
        }
    }
    DigitTally::from_counts(counts)
}

/// Draws configurations uniformly at random (every configuration equally
/// likely) by sequential conditional counting: scanning the boxes left to
/// right, box occupancy d is chosen with probability
/// Ω(rest, remaining − d) / Ω(rest + 1, remaining).
///
/// Exact (no rejection against the cap) and deterministic per seed.
pub struct CompositionSampler {
    spec: BoxSpec,
    rng: ChaCha8Rng,
    memo: HashMap<(u64, u64), BigUint>,
}

impl CompositionSampler {
    pub fn new(spec: &BoxSpec, seed: u64) -> Result<Self> {
        if spec.is_overfull() {
            return Err(Error::EmptyEnsemble {
                boxes: spec.boxes,
                balls: spec.balls,
                cap: spec.cap,
            });
        }
        Ok(Self {
            spec: *spec,
            rng: ChaCha8Rng::seed_from_u64(seed),
            memo: HashMap::new(),
        })
    }

    fn count_memo(&mut self, boxes: u64, balls: u64) -> BigUint {
        if let Some(c) = self.memo.get(&(boxes, balls)) {
            return c.clone();
        }
        let c = count_bounded(boxes, balls, self.spec.cap);
        self.memo.insert((boxes, balls), c.clone());
        c
    }

    pub fn sample(&mut self) -> Composition {
        let mut occupancies = Vec::with_capacity(self.spec.boxes as usize);
        let mut remaining = self.spec.balls;
        for i in 0..self.spec.boxes {
            let rest = self.spec.boxes - i - 1;
            let total = self.count_memo(rest + 1, remaining);
            let mut draw = uniform_below(&mut self.rng, &total);
            let mut chosen = remaining.min(self.spec.cap);
            for d in 0..=remaining.min(self.spec.cap) {
                let weight = self.count_memo(rest, remaining - d);
                if draw < weight {
                    chosen = d;
                    break;
                }
                draw -= weight;
            }
            occupancies.push(chosen);
            remaining -= chosen;
        }
        debug_assert_eq!(remaining, 0);
        Composition(occupancies)
    }
}

/// One uniformly random configuration. Identical seed, identical output.
pub fn sample_composition(spec: &BoxSpec, seed: u64) -> Result<Composition> {
    Ok(CompositionSampler::new(spec, seed)?.sample())
}

/// Uniform big integer in [0, bound).
fn uniform_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    debug_assert!(!bound.is_zero());
    if let Some(b) = bound.to_u64() {
        if b == 1 {
            return BigUint::zero();
        }
        return BigUint::from(rng.gen_range(0..b));
    }
    let bits = bound.bits();
    loop {
        let candidate = random_bits(rng, bits);
        if candidate < *bound {
            return candidate;
        }
    }
}

fn random_bits(rng: &mut ChaCha8Rng, bits: u64) -> BigUint {
    let bytes = bits.div_ceil(8) as usize;
    let mut buf = vec![0u8; bytes];
    rng.fill_bytes(&mut buf);
    let excess = (bytes as u64 * 8 - bits) as u32;
    buf[0] >>= excess;
    BigUint::from_bytes_be(&buf)
}

/// Monte Carlo estimate of the ensemble digit distribution, with per-digit
/// binomial standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    pub distribution: DigitDistribution,
    /// sqrt(p̂(1−p̂)/total) per digit.
    pub standard_errors: BTreeMap<u64, f64>,
    /// Number of configurations drawn.
    pub samples: u64,
    /// Non-zero box entries observed across all samples.
    pub digits_observed: u64,
}

/// Samples `samples` configurations and returns the normalized non-zero
/// digit frequencies. Deterministic per seed; merging partial runs is a
/// matter of adding their digit counts.
pub fn empirical_digit_distribution(
    spec: &BoxSpec,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut sampler = CompositionSampler::new(spec, seed)?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..samples {
        for digit in sampler.sample().nonzero() {
            *counts.entry(digit).or_insert(0) += 1;
        }
    }
    let total: u64 = counts.values().sum();
    if total == 0 {
        return Err(Error::EmptyTally);
    }
    let base = NumberBase::new(spec.cap + 1)?;
    let mut probabilities = BTreeMap::new();
    let mut standard_errors = BTreeMap::new();
    for digit in base.nonzero_digits() {
        let p = counts.get(&digit).copied().unwrap_or(0) as f64 / total as f64;
        probabilities.insert(digit, p);
        standard_errors.insert(digit, (p * (1.0 - p) / total as f64).sqrt());
    }
    Ok(EmpiricalDistribution {
        distribution: DigitDistribution::new(base, probabilities)?,
        standard_errors,
        samples,
        digits_observed: total,
    })
}
