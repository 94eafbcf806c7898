//! BSC simulation and error-pattern sweeps.
//!
//! The all-zero codeword is transmitted throughout, so the received word is
//! the error pattern and any nonzero output is a failure. Randomness is keyed
//! by `(seed, frame index)`: the pattern drawn for a frame never depends on
//! scheduling, worker count or early stopping.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Code;
use crate::{BitDecoder, DecodeError};

/// Patterns decoded per batch before the in-order scan.
const BATCH: usize = 2048;

/// Largest exhaustive sweep run without the long-running override.
pub const DEFAULT_PATTERN_BUDGET: u128 = 1_000_000;

/// Setting this variable to a non-empty value other than `0` lifts the
/// exhaustive budget.
pub const LONG_RUN_ENV: &str = "FAID_LONG_RUN";

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("crossover probability must lie in (0, 0.5), got {0}")]
    BadCrossover(f64),
    #[error("at least one frame or sample is required")]
    NoTrials,
    #[error("weight {t} exceeds the code length {n}")]
    WeightTooLarge { t: usize, n: usize },
    #[error("{patterns} patterns exceed the budget of {budget}; set {LONG_RUN_ENV}=1 to run anyway")]
    BudgetExceeded { patterns: u128, budget: u128 },
    #[error("could not build a worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BscChannel {
    alpha: f64,
    seed: u64,
}

impl BscChannel {
    pub fn new(alpha: f64, seed: u64) -> Result<Self, HarnessError> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(HarnessError::BadCrossover(alpha));
        }
        Ok(Self { alpha, seed })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The error pattern of frame `frame`.
    pub fn error_pattern(&self, n: usize, frame: u64) -> Vec<u8> {
        let mut rng = frame_rng(self.seed, frame);
        (0..n).map(|_| (rng.random::<f64>() < self.alpha) as u8).collect()
    }
}

fn frame_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FerPoint {
    pub alpha: f64,
    pub frames: u64,
    pub failures: u64,
    pub fer: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl FerPoint {
    pub fn new(alpha: f64, frames: u64, failures: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(failures, frames);
        Self {
            alpha,
            frames,
            failures,
            fer: if frames == 0 { 0.0 } else { failures as f64 / frames as f64 },
            ci_low,
            ci_high,
        }
    }

    pub const CSV_HEADER: &'static str = "alpha,frames,failures,fer,ci_low,ci_high";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:e},{:e},{:e}",
            self.alpha, self.frames, self.failures, self.fer, self.ci_low, self.ci_high
        )
    }
}

/// Wilson score interval at 95% for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the bounds at k = 0 and k = n are exact; avoid rounding residue there
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k as f64 == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Runs `f` inside a dedicated pool of `workers` threads (`0` picks the
/// default size).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

fn fails(decoder: &dyn BitDecoder, code: &Code, received: &[u8]) -> Result<bool, DecodeError> {
    let out = decoder.decode_word(&code.graph, received)?;
    Ok(out.bits.iter().any(|&b| b != 0))
}

/// Decodes `support` as an error pattern and reports whether decoding fails.
pub fn replay(decoder: &dyn BitDecoder, code: &Code, support: &[usize]) -> Result<bool, HarnessError> {
    let mut word = vec![0u8; code.n()];
    for &v in support {
        word[v] = 1;
    }
    Ok(fails(decoder, code, &word)?)
}

/// Monte-Carlo frame error rate. Frames are drawn independently; with
/// `stop_at_failures` the count stops at the frame producing that failure.
pub fn simulate_fer(
    decoder: &dyn BitDecoder,
    code: &Code,
    channel: &BscChannel,
    frames: u64,
    stop_at_failures: Option<u64>,
) -> Result<FerPoint, HarnessError> {
    if frames == 0 {
        return Err(HarnessError::NoTrials);
    }
    let n = code.n();
    let mut done = 0u64;
    let mut failures = 0u64;
    while done < frames {
        let end = (done + BATCH as u64).min(frames);
        let outcomes = (done..end)
            .into_par_iter()
            .map(|f| fails(decoder, code, &channel.error_pattern(n, f)))
            .collect::<Result<Vec<bool>, DecodeError>>()?;
        for failed in outcomes {
            done += 1;
            failures += failed as u64;
            if stop_at_failures.is_some_and(|s| failures >= s) {
                return Ok(FerPoint::new(channel.alpha, done, failures));
            }
        }
    }
    Ok(FerPoint::new(channel.alpha, done, failures))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn long_run_enabled() -> bool {
    std::env::var(LONG_RUN_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub t: usize,
    pub tested: u64,
    /// Every failing support (0-based, ascending), in lexicographic order.
    pub failures: Vec<Vec<usize>>,
}

impl ExhaustiveReport {
    /// Zero failures: every weight-`t` pattern is corrected.
    pub fn guaranteed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decodes every weight-`t` error pattern. Sweeps above `budget` patterns
/// need the long-running override.
pub fn exhaustive_weight_t(
    decoder: &dyn BitDecoder,
    code: &Code,
    t: usize,
    budget: u128,
) -> Result<ExhaustiveReport, HarnessError> {
    let n = code.n();
    if t > n {
        return Err(HarnessError::WeightTooLarge { t, n });
    }
    let patterns = binomial(n, t);
    if patterns > budget && !long_run_enabled() {
        return Err(HarnessError::BudgetExceeded { patterns, budget });
    }
    let mut failures = Vec::new();
    let mut tested = 0u64;
    for chunk in &(0..n).combinations(t).chunks(BATCH) {
        let supports: Vec<Vec<usize>> = chunk.collect();
        let flags = supports
            .par_iter()
            .map(|s| replay(decoder, code, s))
            .collect::<Result<Vec<bool>, HarnessError>>()?;
        tested += supports.len() as u64;
        failures.extend(supports.into_iter().zip(flags).filter(|(_, f)| *f).map(|(s, _)| s));
    }
    Ok(ExhaustiveReport { t, tested, failures })
}

/// A failing sampled pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub sample: u64,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub t: usize,
    pub samples: u64,
    pub seed: u64,
    pub witnesses: Vec<Witness>,
}

impl SampleReport {
    pub fn failures(&self) -> usize {
        self.witnesses.len()
    }
}

/// The support drawn for sample `index`: `t` distinct positions, uniform,
/// sorted ascending.
pub fn sampled_support(n: usize, t: usize, seed: u64, index: u64) -> Vec<usize> {
    let mut rng = frame_rng(seed, index);
    let mut support = sample(&mut rng, n, t).into_vec();
    support.sort_unstable();
    support
}

/// Decodes `samples` uniformly drawn weight-`t` patterns and keeps every
/// failing one.
pub fn sample_weight_t(
    decoder: &dyn BitDecoder,
    code: &Code,
    t: usize,
    samples: u64,
    seed: u64,
) -> Result<SampleReport, HarnessError> {
    let n = code.n();
    if samples == 0 {
        return Err(HarnessError::NoTrials);
    }
    if t > n {
        return Err(HarnessError::WeightTooLarge { t, n });
    }
    let mut witnesses = Vec::new();
    let mut start = 0u64;
    while start < samples {
        let end = (start + BATCH as u64).min(samples);
        let found = (start..end)
            .into_par_iter()
            .map(|i| {
                let support = sampled_support(n, t, seed, i);
                Ok(replay(decoder, code, &support)?.then_some(Witness { sample: i, support }))
            })
            .collect::<Result<Vec<Option<Witness>>, HarnessError>>()?;
        witnesses.extend(found.into_iter().flatten());
        start = end;
    }
    Ok(SampleReport {
        t,
        samples,
        seed,
        witnesses,
    })
}
