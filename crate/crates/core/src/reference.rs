//! Floating-point belief propagation and min-sum on the BSC.
//!
//! Both use a flooding schedule without damping. Messages are log-likelihood
//! ratios (positive favors bit 0) clipped to `±llr_clip`. Min-sum measures the
//! clip in multiples of the channel LLR magnitude.

use thiserror::Error;

use crate::graph::{Code, LengthMismatch, TannerGraph};
use crate::{BitDecoder, DecodeError, DecodeOutcome};

pub const DEFAULT_LLR_CLIP: f64 = 25.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BpConfigError {
    #[error("crossover probability must lie in (0, 0.5), got {0}")]
    Crossover(f64),
    #[error("LLR clip must be positive, got {0}")]
    Clip(f64),
    #[error("maximum iteration count must be positive")]
    Iterations,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpConfig {
    crossover: f64,
    max_iterations: usize,
    llr_clip: f64,
}

impl BpConfig {
    pub fn new(crossover: f64, max_iterations: usize, llr_clip: f64) -> Result<Self, BpConfigError> {
        if !(crossover > 0.0 && crossover < 0.5) {
            return Err(BpConfigError::Crossover(crossover));
        }
        if !(llr_clip > 0.0) {
            return Err(BpConfigError::Clip(llr_clip));
        }
        if max_iterations == 0 {
            return Err(BpConfigError::Iterations);
        }
        Ok(Self {
            crossover,
            max_iterations,
            llr_clip,
        })
    }

    pub fn with_defaults(crossover: f64) -> Result<Self, BpConfigError> {
        Self::new(crossover, crate::faid::DEFAULT_MAX_ITERATIONS, DEFAULT_LLR_CLIP)
    }

    pub fn crossover(&self) -> f64 {
        self.crossover
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    pub fn llr_clip(&self) -> f64 {
        self.llr_clip
    }

    /// Magnitude of the channel LLR, `ln((1 - a) / a)`.
    pub fn channel_llr(&self) -> f64 {
        ((1.0 - self.crossover) / self.crossover).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRule {
    /// Sum-product, tanh rule in pairwise box-plus form.
    SumProduct,
    /// Sign product times minimum magnitude, no normalization or offset.
    MinSum,
}

/// Box-plus of two LLRs: `2 atanh(tanh(a/2) tanh(b/2))`, in a form that stays
/// finite for large arguments.
pub fn boxplus(a: f64, b: f64) -> f64 {
    // an infinite LLR is a known bit and acts as (signed) identity
    if a.is_infinite() {
        return a.signum() * b;
    }
    if b.is_infinite() {
        return b.signum() * a;
    }
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs()) + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

/// Posterior LLRs after a fixed number of iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct Posteriors {
    pub llr: Vec<f64>,
    /// How many message computations hit the clip.
    pub clip_events: usize,
}

#[derive(Debug, Clone)]
pub struct ReferenceDecoder {
    cfg: BpConfig,
    rule: CheckRule,
}

struct Engine {
    rule: CheckRule,
    clip: f64,
    channel: Vec<f64>,
    // edge e: variable-major, check_edges lists edge ids per check
    var_edges: Vec<std::ops::Range<usize>>,
    check_edges: Vec<Vec<usize>>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    posterior: Vec<f64>,
    clip_events: usize,
    scratch: Vec<f64>,
}

impl Engine {
    fn new(graph: &TannerGraph, rule: CheckRule, cfg: &BpConfig, received: &[u8]) -> Self {
        // Min-sum is scale-invariant, so it runs in units of the channel LLR;
        // sums of small integers are then exact and ties are detected exactly.
        // Its clip is read in the same units, which keeps the output free of α.
        let (mag, clip) = match rule {
            CheckRule::SumProduct => (cfg.channel_llr(), cfg.llr_clip),
            CheckRule::MinSum => (1.0, cfg.llr_clip),
        };
        let channel: Vec<f64> = received
            .iter()
            .map(|&r| if r & 1 == 0 { mag } else { -mag })
            .collect();
        let mut var_edges = Vec::with_capacity(graph.n_var());
        let mut check_edges = vec![Vec::new(); graph.n_chk()];
        let mut e = 0;
        for v in 0..graph.n_var() {
            let start = e;
            for &c in graph.var_neighbors(v) {
                check_edges[c].push(e);
                e += 1;
            }
            var_edges.push(start..e);
        }
        Self {
            rule,
            clip,
            posterior: channel.clone(),
            channel,
            var_edges,
            check_edges,
            v2c: vec![0.0; e],
            c2v: vec![0.0; e],
            clip_events: 0,
            scratch: Vec::new(),
        }
    }

    fn clip(&mut self, x: f64) -> f64 {
        if x.abs() > self.clip {
            self.clip_events += 1;
            x.signum() * self.clip
        } else {
            x
        }
    }

    fn step(&mut self) {
        for v in 0..self.var_edges.len() {
            let range = self.var_edges[v].clone();
            let total: f64 = self.channel[v] + self.c2v[range.clone()].iter().sum::<f64>();
            for e in range {
                let m = total - self.c2v[e];
                self.v2c[e] = self.clip(m);
            }
        }
        for c in 0..self.check_edges.len() {
            let edges = std::mem::take(&mut self.check_edges[c]);
            match self.rule {
                CheckRule::SumProduct => self.sum_product_check(&edges),
                CheckRule::MinSum => self.min_sum_check(&edges),
            }
            self.check_edges[c] = edges;
        }
        for v in 0..self.var_edges.len() {
            let range = self.var_edges[v].clone();
            self.posterior[v] = self.channel[v] + self.c2v[range].iter().sum::<f64>();
        }
    }

    fn sum_product_check(&mut self, edges: &[usize]) {
        // prefix/suffix box-plus products give every extrinsic output in O(d)
        let d = edges.len();
        self.scratch.clear();
        self.scratch.resize(d + 1, f64::INFINITY);
        for k in (0..d).rev() {
            self.scratch[k] = boxplus(self.v2c[edges[k]], self.scratch[k + 1]);
        }
        let mut prefix = f64::INFINITY;
        for k in 0..d {
            let out = boxplus(prefix, self.scratch[k + 1]);
            self.c2v[edges[k]] = self.clip(out);
            prefix = boxplus(prefix, self.v2c[edges[k]]);
        }
    }

    fn min_sum_check(&mut self, edges: &[usize]) {
        let mut negative = false;
        let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
        for &e in edges {
            let m = self.v2c[e];
            negative ^= m < 0.0;
            let mag = m.abs();
            if mag < min1 {
                min2 = min1;
                min1 = mag;
                arg = e;
            } else if mag < min2 {
                min2 = mag;
            }
        }
        for &e in edges {
            let mag = if e == arg { min2 } else { min1 };
            let neg = negative ^ (self.v2c[e] < 0.0);
            let out = if neg { -mag } else { mag };
            self.c2v[e] = self.clip(out);
        }
    }

    fn decisions(&self, out: &mut [u8]) {
        for (v, bit) in out.iter_mut().enumerate() {
            let p = self.posterior[v];
            *bit = if p > 0.0 {
                0
            } else if p < 0.0 {
                1
            } else {
                // tie keeps the received bit
                u8::from(self.channel[v] < 0.0)
            };
        }
    }
}

impl ReferenceDecoder {
    pub fn new(cfg: BpConfig, rule: CheckRule) -> Self {
        Self { cfg, rule }
    }

    pub fn sum_product(cfg: BpConfig) -> Self {
        Self::new(cfg, CheckRule::SumProduct)
    }

    pub fn min_sum(cfg: BpConfig) -> Self {
        Self::new(cfg, CheckRule::MinSum)
    }

    pub fn config(&self) -> &BpConfig {
        &self.cfg
    }

    pub fn rule(&self) -> CheckRule {
        self.rule
    }

    fn check_len(graph: &TannerGraph, received: &[u8]) -> Result<(), LengthMismatch> {
        if received.len() != graph.n_var() {
            return Err(LengthMismatch {
                expected: graph.n_var(),
                got: received.len(),
            });
        }
        Ok(())
    }

    pub fn decode(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome, LengthMismatch> {
        Self::check_len(graph, received)?;
        if graph.is_codeword(received) {
            return Ok(DecodeOutcome {
                bits: received.to_vec(),
                converged: true,
                iterations: 1,
            });
        }
        let mut engine = Engine::new(graph, self.rule, &self.cfg, received);
        let mut bits = vec![0u8; graph.n_var()];
        for it in 1..=self.cfg.max_iterations {
            engine.step();
            engine.decisions(&mut bits);
            if graph.is_codeword(&bits) {
                return Ok(DecodeOutcome {
                    bits,
                    converged: true,
                    iterations: it,
                });
            }
        }
        Ok(DecodeOutcome {
            bits,
            converged: false,
            iterations: self.cfg.max_iterations,
        })
    }

    /// Runs exactly `iterations` iterations with no syndrome stop and returns
    /// the posterior LLRs in natural units.
    pub fn posteriors(&self, graph: &TannerGraph, received: &[u8], iterations: usize) -> Result<Posteriors, LengthMismatch> {
        Self::check_len(graph, received)?;
        let mut engine = Engine::new(graph, self.rule, &self.cfg, received);
        for _ in 0..iterations {
            engine.step();
        }
        let scale = match self.rule {
            CheckRule::SumProduct => 1.0,
            CheckRule::MinSum => self.cfg.channel_llr(),
        };
        Ok(Posteriors {
            llr: engine.posterior.iter().map(|p| p * scale).collect(),
            clip_events: engine.clip_events,
        })
    }

    /// Hard decisions after exactly `iterations` iterations, no syndrome stop.
    pub fn decisions_after(&self, graph: &TannerGraph, received: &[u8], iterations: usize) -> Result<Vec<u8>, LengthMismatch> {
        Self::check_len(graph, received)?;
        let mut engine = Engine::new(graph, self.rule, &self.cfg, received);
        for _ in 0..iterations {
            engine.step();
        }
        let mut bits = vec![0u8; graph.n_var()];
        engine.decisions(&mut bits);
        Ok(bits)
    }
}

impl BitDecoder for ReferenceDecoder {
    fn name(&self) -> String {
        match self.rule {
            CheckRule::SumProduct => "bp".into(),
            CheckRule::MinSum => "minsum".into(),
        }
    }

    fn decode_word(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome, DecodeError> {
        Ok(self.decode(graph, received)?)
    }
}

pub fn bp_decode(cfg: BpConfig, code: &Code, received: &[u8]) -> Result<DecodeOutcome, LengthMismatch> {
    ReferenceDecoder::sum_product(cfg).decode(&code.graph, received)
}

pub fn minsum_decode(cfg: BpConfig, code: &Code, received: &[u8]) -> Result<DecodeOutcome, LengthMismatch> {
    ReferenceDecoder::min_sum(cfg).decode(&code.graph, received)
}
