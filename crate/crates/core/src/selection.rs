//! Decoder domination over noisy critical number vectors and the
//! threshold-based candidate selection built on it.
//!
//! For a topology set `Lambda` sharing one `b`, decoder `k` dominates decoder
//! `l` under initialization vector `i` when its noisy critical number is at
//! least as large on every topology. `n(k, l)` counts those vectors, and the
//! cost of a candidate sums its domination strengths against a good set `F_g`
//! and a bad set `F_b`.

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::faid::FaidDecoder;
use crate::ts::{ncnv_with_budget, CriticalNumber, Ncnv, TsError, TsTopology, DEFAULT_NCNV_BUDGET, DEFAULT_NI};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelectionError {
    #[error("profiles are not comparable: {0}")]
    ProfileMismatch(String),
    #[error("the topology set is empty")]
    EmptyLambda,
    #[error("topology {name} has b = {b}, expected {expected}")]
    MixedB { name: String, b: usize, expected: usize },
    #[error(transparent)]
    Ts(#[from] TsError),
}

/// One decoder's NCNVs over a shared topology set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NcnvProfile {
    pub decoder: String,
    pub ncnvs: Vec<Ncnv>,
}

impl NcnvProfile {
    pub fn new(decoder: impl Into<String>, ncnvs: Vec<Ncnv>) -> Result<Self, SelectionError> {
        if let Some(first) = ncnvs.first() {
            if let Some(bad) = ncnvs.iter().find(|n| n.theta_order != first.theta_order) {
                return Err(SelectionError::ProfileMismatch(format!(
                    "{} and {} use different initialization orders",
                    first.topology, bad.topology
                )));
            }
        }
        Ok(Self {
            decoder: decoder.into(),
            ncnvs,
        })
    }

    /// Synthetic profile from raw vectors, one per topology, with the theta
    /// order left as plain indices.
    pub fn from_values(decoder: impl Into<String>, vectors: Vec<Vec<CriticalNumber>>) -> Result<Self, SelectionError> {
        let decoder = decoder.into();
        let ncnvs = vectors
            .into_iter()
            .enumerate()
            .map(|(j, values)| Ncnv {
                topology: format!("T{}", j + 1),
                decoder: decoder.clone(),
                n_i: DEFAULT_NI,
                theta_order: (0..values.len()).map(|i| vec![i as i8]).collect(),
                values,
            })
            .collect();
        Self::new(decoder, ncnvs)
    }

    /// Computes the NCNV of `decoder` on every topology of `lambda`.
    pub fn compute(
        id: impl Into<String>,
        decoder: &FaidDecoder,
        lambda: &[TsTopology],
        n_i: usize,
        budget: u128,
    ) -> Result<Self, SelectionError> {
        check_lambda(lambda)?;
        let id = id.into();
        let ncnvs = lambda
            .iter()
            .map(|ts| {
                ncnv_with_budget(decoder, ts, n_i, budget).map(|mut n| {
                    n.decoder = id.clone();
                    n
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(id, ncnvs)
    }

    /// `N_Theta`, the common NCNV length.
    pub fn n_theta(&self) -> usize {
        self.ncnvs.first().map_or(0, Ncnv::len)
    }
}

fn check_lambda(lambda: &[TsTopology]) -> Result<(), SelectionError> {
    let first = lambda.first().ok_or(SelectionError::EmptyLambda)?;
    match lambda.iter().find(|t| t.b() != first.b()) {
        Some(t) => Err(SelectionError::MixedB {
            name: t.name().to_string(),
            b: t.b(),
            expected: first.b(),
        }),
        None => Ok(()),
    }
}

fn comparable(k: &NcnvProfile, l: &NcnvProfile) -> Result<(), SelectionError> {
    if k.ncnvs.len() != l.ncnvs.len() {
        return Err(SelectionError::ProfileMismatch(format!(
            "{} has {} topologies, {} has {}",
            k.decoder,
            k.ncnvs.len(),
            l.decoder,
            l.ncnvs.len()
        )));
    }
    for (a, b) in k.ncnvs.iter().zip(&l.ncnvs) {
        if a.len() != b.len() {
            return Err(SelectionError::ProfileMismatch(format!(
                "{} has {} initialization vectors on {}, {} has {}; the alphabets differ",
                k.decoder,
                a.len(),
                a.topology,
                l.decoder,
                b.len()
            )));
        }
        if a.topology != b.topology || a.theta_order != b.theta_order {
            return Err(SelectionError::ProfileMismatch(format!(
                "topology {} does not line up with {}",
                a.topology, b.topology
            )));
        }
    }
    Ok(())
}

fn dominates_unchecked(k: &NcnvProfile, l: &NcnvProfile, i: usize) -> bool {
    k.ncnvs.iter().zip(&l.ncnvs).all(|(a, b)| a.values[i] >= b.values[i])
}

/// Whether `k` dominates `l` under initialization vector `i` (0-based): its
/// noisy critical number is no smaller on any topology.
pub fn dominates_at(k: &NcnvProfile, l: &NcnvProfile, i: usize) -> Result<bool, SelectionError> {
    comparable(k, l)?;
    if i >= k.n_theta() {
        return Err(SelectionError::ProfileMismatch(format!(
            "index {i} outside 0..{}",
            k.n_theta()
        )));
    }
    Ok(dominates_unchecked(k, l, i))
}

/// `n(k, l)`: the number of initialization vectors under which `k` dominates `l`.
pub fn domination_count(k: &NcnvProfile, l: &NcnvProfile) -> Result<usize, SelectionError> {
    comparable(k, l)?;
    Ok((0..k.n_theta()).filter(|&i| dominates_unchecked(k, l, i)).count())
}

/// Both directions of the domination count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Domination {
    pub forward: usize,
    pub backward: usize,
}

impl Domination {
    pub fn between(k: &NcnvProfile, l: &NcnvProfile) -> Result<Self, SelectionError> {
        Ok(Self {
            forward: domination_count(k, l)?,
            backward: domination_count(l, k)?,
        })
    }

    /// `k` dominates `l`; ties dominate both ways.
    pub fn holds(&self) -> bool {
        self.forward >= self.backward
    }

    pub fn held_by_other(&self) -> bool {
        self.backward >= self.forward
    }

    /// `n(k,l) - n(l,k)`; negative when `l` is the dominating side.
    pub fn strength(&self) -> i64 {
        self.forward as i64 - self.backward as i64
    }

    /// Contribution to the cost of `k`: the strength gained when `k`
    /// dominates, minus the strength conceded when it is dominated.
    fn cost_term(&self) -> i64 {
        let gained = if self.holds() { self.strength() } else { 0 };
        let conceded = if self.held_by_other() { -self.strength() } else { 0 };
        gained - conceded
    }
}

/// Cost of `k` against good and bad reference sets.
pub fn cost(k: &NcnvProfile, good: &[NcnvProfile], bad: &[NcnvProfile]) -> Result<i64, SelectionError> {
    good.iter()
        .chain(bad)
        .map(|r| Domination::between(k, r).map(|d| d.cost_term()))
        .sum()
}

/// A decoder offered for selection. `index` is its stable position in the
/// stream it came from (enumeration order for class-A sweeps).
#[derive(Debug, Clone)]
pub struct Candidate {
    pub index: usize,
    pub id: String,
    pub decoder: FaidDecoder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionConfig {
    pub tau: f64,
    pub n_i: usize,
    pub budget: u128,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            tau: 0.0,
            n_i: DEFAULT_NI,
            budget: DEFAULT_NCNV_BUDGET,
        }
    }
}

fn serialize_tau<S: Serializer>(tau: &f64, s: S) -> Result<S::Ok, S::Error> {
    if tau.is_finite() {
        s.serialize_f64(*tau)
    } else if *tau > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportConfig {
    #[serde(serialize_with = "serialize_tau")]
    pub tau: f64,
    #[serde(rename = "N_I")]
    pub n_i: usize,
    pub lambda: Vec<String>,
    pub f_g: Vec<String>,
    pub f_b: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Selected {
    pub index: usize,
    pub id: String,
    pub cost: i64,
}

/// One cell of the candidate-versus-reference domination matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseRow {
    pub candidate: String,
    pub reference: String,
    pub n_forward: usize,
    pub n_backward: usize,
    pub strength: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub config: ReportConfig,
    /// Cost of every evaluated candidate, by index.
    pub evaluated: Vec<Selected>,
    /// Every candidate with cost at least `tau`, by cost descending then index.
    pub f_c: Vec<Selected>,
    pub max_cost: Option<i64>,
    pub matrix: Vec<PairwiseRow>,
}

impl SelectionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn matrix_csv(&self) -> String {
        let mut out = String::from("candidate,reference,n_forward,n_backward,strength\n");
        for r in &self.matrix {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.candidate, r.reference, r.n_forward, r.n_backward, r.strength
            ));
        }
        out
    }

    /// Size of the candidate set at another threshold, from the same costs.
    pub fn count_at_least(&self, tau: f64) -> usize {
        self.evaluated.iter().filter(|c| c.cost as f64 >= tau).count()
    }
}

/// Evaluates a stream of candidates against `F_g` and `F_b` on `lambda`.
pub fn select(
    candidates: &[Candidate],
    lambda: &[TsTopology],
    good: &[Candidate],
    bad: &[Candidate],
    config: &SelectionConfig,
) -> Result<SelectionReport, SelectionError> {
    check_lambda(lambda)?;
    let profile = |c: &Candidate| NcnvProfile::compute(c.id.clone(), &c.decoder, lambda, config.n_i, config.budget);
    let good_p = good.iter().map(profile).collect::<Result<Vec<_>, _>>()?;
    let bad_p = bad.iter().map(profile).collect::<Result<Vec<_>, _>>()?;
    let references: Vec<&NcnvProfile> = good_p.iter().chain(&bad_p).collect();

    let evaluated = candidates
        .par_iter()
        .map(|c| {
            let p = profile(c)?;
            let mut rows = Vec::with_capacity(references.len());
            let mut total = 0i64;
            for r in &references {
                let d = Domination::between(&p, r)?;
                total += d.cost_term();
                rows.push(PairwiseRow {
                    candidate: c.id.clone(),
                    reference: r.decoder.clone(),
                    n_forward: d.forward,
                    n_backward: d.backward,
                    strength: d.strength(),
                });
            }
            Ok((c.index, c.id.clone(), total, rows))
        })
        .collect::<Result<Vec<_>, SelectionError>>()?;

    let mut order: Vec<usize> = (0..evaluated.len()).collect();
    order.sort_by_key(|&i| (evaluated[i].0, evaluated[i].1.clone()));
    let all: Vec<Selected> = order
        .iter()
        .map(|&i| Selected {
            index: evaluated[i].0,
            id: evaluated[i].1.clone(),
            cost: evaluated[i].2,
        })
        .collect();
    let mut f_c: Vec<Selected> = all.iter().filter(|e| e.cost as f64 >= config.tau).cloned().collect();
    f_c.sort_by(|a, b| b.cost.cmp(&a.cost).then(a.index.cmp(&b.index)).then(a.id.cmp(&b.id)));
    let matrix = order.iter().flat_map(|&i| evaluated[i].3.iter().cloned()).collect();

    let report = SelectionReport {
        config: ReportConfig {
            tau: config.tau,
            n_i: config.n_i,
            lambda: lambda.iter().map(|t| t.name().to_string()).collect(),
            f_g: good.iter().map(|c| c.id.clone()).collect(),
            f_b: bad.iter().map(|c| c.id.clone()).collect(),
        },
        max_cost: all.iter().map(|c| c.cost).max(),
        evaluated: all,
        f_c,
        matrix,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CriticalNumber::Finite;

    fn p(name: &str, v: &[u32]) -> NcnvProfile {
        NcnvProfile::from_values(name, vec![v.iter().map(|&x| Finite(x)).collect()]).unwrap()
    }

    #[test]
    fn hand_arithmetic() {
        let k = p("k", &[2, 3, 2]);
        let l = p("l", &[2, 2, 3]);
        assert!(dominates_at(&k, &l, 0).unwrap());
        assert!(dominates_at(&k, &l, 1).unwrap());
        assert!(!dominates_at(&k, &l, 2).unwrap());
        assert_eq!(domination_count(&k, &l).unwrap(), 2);
        assert_eq!(domination_count(&l, &k).unwrap(), 2);
        let d = Domination::between(&k, &l).unwrap();
        assert!(d.holds() && d.held_by_other());
        assert_eq!(d.strength(), 0);
        assert_eq!(domination_count(&k, &k).unwrap(), 3);
    }

    #[test]
    fn mismatched_profiles() {
        let k = p("k", &[1, 2, 3]);
        let l = p("l", &[1, 2]);
        assert!(matches!(domination_count(&k, &l), Err(SelectionError::ProfileMismatch(_))));
        assert!(dominates_at(&k, &k, 3).is_err());
    }
}
