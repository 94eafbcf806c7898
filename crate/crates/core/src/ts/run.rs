use itertools::Itertools;
use serde::Serialize;

use super::{CriticalNumber, InitVector, TsError, TsTopology};
use crate::faid::{Channel, FaidDecoder, Symbol};

/// Iterations per isolated run unless configured otherwise.
pub const DEFAULT_NI: usize = 10;

/// Result of one isolated run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunOutcome {
    /// True iff every variable decision was correct at the end of some
    /// iteration up to the cap.
    pub corrected: bool,
    /// The first such iteration (1-based).
    pub first_good_iter: Option<usize>,
}

/// Outcome of the exhaustive subset search behind a critical number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalSearch {
    pub number: CriticalNumber,
    /// The first failing subset in search order (0-based variables), absent
    /// when the number is infinite.
    pub witness: Option<Vec<usize>>,
}

/// Message passing restricted to one topology for one decoder.
///
/// Degree-two checks forward the other side's message (the min-sum rule on a
/// single input). Degree-one checks emit whatever the boundary rule dictates.
pub(crate) struct Engine<'a> {
    dec: &'a FaidDecoder,
    a: usize,
    // the three edges of each variable
    var_edges: Vec<[usize; 3]>,
    // for each edge: the other edge on its check, or the theta position
    source: Vec<Source>,
}

#[derive(Clone, Copy)]
enum Source {
    Edge(usize),
    Boundary(usize),
}

impl<'a> Engine<'a> {
    pub(crate) fn new(dec: &'a FaidDecoder, ts: &TsTopology) -> Result<Self, TsError> {
        let mut var_edges: Vec<Vec<usize>> = vec![Vec::with_capacity(3); ts.a()];
        let mut source = Vec::new();
        let mut theta_pos = 0;
        for nbrs in ts.checks() {
            let first = source.len();
            match nbrs[..] {
                [v] => {
                    var_edges[v].push(first);
                    source.push(Source::Boundary(theta_pos));
                    theta_pos += 1;
                }
                [v, w] => {
                    var_edges[v].push(first);
                    var_edges[w].push(first + 1);
                    source.push(Source::Edge(first + 1));
                    source.push(Source::Edge(first));
                }
                _ => unreachable!("topologies are elementary"),
            }
        }
        let var_edges = var_edges
            .into_iter()
            .enumerate()
            .map(|(var, edges)| {
                <[usize; 3]>::try_from(edges.as_slice()).map_err(|_| TsError::NotColumnWeightThree {
                    var,
                    degree: edges.len(),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            dec,
            a: ts.a(),
            var_edges,
            source,
        })
    }

    pub(crate) fn check_theta(&self, theta: &InitVector, b: usize) -> Result<(), TsError> {
        if theta.len() != b {
            return Err(TsError::ThetaLength {
                expected: b,
                got: theta.len(),
            });
        }
        let alphabet = self.dec.alphabet();
        match theta.thetas().iter().find(|&&t| !alphabet.contains(t)) {
            Some(&t) => Err(TsError::ThetaSymbol(t)),
            None => Ok(()),
        }
    }

    /// `boundary(position, iteration)` is the message of a degree-one check.
    pub(crate) fn run(
        &self,
        errors: &[bool],
        boundary: impl Fn(usize, usize) -> Symbol,
        n_i: usize,
    ) -> RunOutcome {
        let channel: Vec<Channel> = errors.iter().map(|&e| Channel::from_bit(e as u8)).collect();
        let mut c2v = vec![Symbol::ZERO; self.source.len()];
        let mut v2c = vec![Symbol::ZERO; self.source.len()];
        for k in 1..=n_i {
            for (&[e0, e1, e2], &y) in self.var_edges.iter().zip(&channel) {
                v2c[e0] = self.dec.phi_v(y, c2v[e1], c2v[e2]);
                v2c[e1] = self.dec.phi_v(y, c2v[e0], c2v[e2]);
                v2c[e2] = self.dec.phi_v(y, c2v[e0], c2v[e1]);
            }
            for (slot, src) in c2v.iter_mut().zip(&self.source) {
                *slot = match *src {
                    Source::Edge(other) => v2c[other],
                    Source::Boundary(pos) => boundary(pos, k),
                };
            }
            let all_good = self
                .var_edges
                .iter()
                .zip(&channel)
                .all(|(&[e0, e1, e2], &y)| self.dec.decide(y, [c2v[e0], c2v[e1], c2v[e2]]) == 0);
            if all_good {
                return RunOutcome {
                    corrected: true,
                    first_good_iter: Some(k),
                };
            }
        }
        RunOutcome {
            corrected: false,
            first_good_iter: None,
        }
    }

    /// Smallest failing subset weight, searching weights upward and subsets
    /// lexicographically within a weight.
    pub(crate) fn search(&self, boundary: impl Fn(usize, usize) -> Symbol + Copy, n_i: usize) -> CriticalSearch {
        let mut errors = vec![false; self.a];
        for w in 0..=self.a {
            for subset in (0..self.a).combinations(w) {
                errors.iter_mut().for_each(|e| *e = false);
                for &v in &subset {
                    errors[v] = true;
                }
                if !self.run(&errors, boundary, n_i).corrected {
                    return CriticalSearch {
                        number: CriticalNumber::Finite(w as u32),
                        witness: Some(subset),
                    };
                }
            }
        }
        CriticalSearch {
            number: CriticalNumber::Infinite,
            witness: None,
        }
    }
}

fn error_mask(ts: &TsTopology, errors: &[usize]) -> Result<Vec<bool>, TsError> {
    let mut mask = vec![false; ts.a()];
    for &var in errors {
        if var >= ts.a() {
            return Err(TsError::ErrorIndex { var, a: ts.a() });
        }
        mask[var] = true;
    }
    Ok(mask)
}

fn check_iterations(n_i: usize) -> Result<(), TsError> {
    if n_i == 0 {
        Err(TsError::ZeroIterations)
    } else {
        Ok(())
    }
}

/// Runs the noisy topology: channel `-C` on `errors` (0-based), `+C`
/// elsewhere, degree-one check `i` emitting `theta_i` every iteration.
pub fn noisy_run(
    decoder: &FaidDecoder,
    ts: &TsTopology,
    errors: &[usize],
    theta: &InitVector,
    n_i: usize,
) -> Result<RunOutcome, TsError> {
    check_iterations(n_i)?;
    let engine = Engine::new(decoder, ts)?;
    engine.check_theta(theta, ts.b())?;
    let mask = error_mask(ts, errors)?;
    let t = theta.thetas();
    Ok(engine.run(&mask, |pos, _| t[pos], n_i))
}

/// Smallest number of errors inside the topology that the decoder fails to
/// correct within `n_i` iterations under the initialization vector `theta`.
pub fn noisy_critical_number(
    decoder: &FaidDecoder,
    ts: &TsTopology,
    theta: &InitVector,
    n_i: usize,
) -> Result<CriticalSearch, TsError> {
    check_iterations(n_i)?;
    let engine = Engine::new(decoder, ts)?;
    engine.check_theta(theta, ts.b())?;
    let t = theta.thetas();
    Ok(engine.search(|pos, _| t[pos], n_i))
}

/// Messages leaving an all-correct cycle-free neighborhood:
/// `nu_1 = Phi_v(+C, 0, 0)`, `nu_{k+1} = Phi_v(+C, nu_k, nu_k)`.
pub fn nu_trajectory(decoder: &FaidDecoder, len: usize) -> Vec<Symbol> {
    let mut nu = Vec::with_capacity(len);
    let mut m = Symbol::ZERO;
    for _ in 0..len {
        m = decoder.phi_v(Channel::Plus, m, m);
        nu.push(m);
    }
    nu
}

/// The plain critical number under the isolation assumption: degree-one checks
/// carry the [`nu_trajectory`] of a correct neighborhood.
pub fn critical_number(decoder: &FaidDecoder, ts: &TsTopology, n_i: usize) -> Result<CriticalSearch, TsError> {
    check_iterations(n_i)?;
    let engine = Engine::new(decoder, ts)?;
    let nu = nu_trajectory(decoder, n_i);
    let nu = nu.as_slice();
    Ok(engine.search(|_, k| nu[k - 1], n_i))
}
