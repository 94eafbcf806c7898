//! Trapping-set topologies and their isolated and noisy dynamics.
//!
//! A topology is an elementary trapping set `T(a, b)`: `a` variable nodes,
//! checks of degree one or two, `b` of them of degree one. Under the isolation
//! assumption the rest of the code only talks to the set through its
//! degree-one checks, so a run on the topology alone needs a rule for what
//! those checks emit: a constant initialization vector `Theta` for the noisy
//! variant, or the all-correct tree trajectory for the plain one.

mod ncnv;
mod run;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::faid::Symbol;

pub use ncnv::{ncnv, ncnv_with_budget, theta_at, theta_count, Ncnv, DEFAULT_NCNV_BUDGET};
pub use run::{
    critical_number, noisy_critical_number, noisy_run, nu_trajectory, CriticalSearch, RunOutcome,
    DEFAULT_NI,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TsError {
    #[error("topology file, line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("topology file, line {line}: check of degree {degree} is not elementary")]
    NonElementary { line: usize, degree: usize },
    #[error("topology file, line {line}: variable index {index} outside 1..={a}")]
    IndexOutOfRange { line: usize, index: usize, a: usize },
    #[error("topology file, line {line}: declared degree {declared} but {listed} neighbors listed")]
    DegreeMismatch { line: usize, declared: usize, listed: usize },
    #[error("variable {var} has degree {degree} inside the topology; at most 3 fit a column-weight-three code")]
    VariableDegree { var: usize, degree: usize },
    #[error("variable {var} has degree {degree}; isolated runs need every variable at degree 3")]
    NotColumnWeightThree { var: usize, degree: usize },
    #[error("initialization vector has {got} entries, topology has {expected} degree-one checks")]
    ThetaLength { expected: usize, got: usize },
    #[error("symbol {0} is outside the decoder's alphabet")]
    ThetaSymbol(Symbol),
    #[error("error position {var} outside 0..{a}")]
    ErrorIndex { var: usize, a: usize },
    #[error("iteration count must be positive")]
    ZeroIterations,
    #[error("{size} initialization vectors exceed the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
}

/// An elementary trapping-set topology. Variables and checks are 0-based in
/// memory; the file format is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsTopology {
    name: String,
    a: usize,
    checks: Vec<Vec<usize>>,
    // check indices of the degree-one checks; position i carries theta_i
    d1_order: Vec<usize>,
}

impl TsTopology {
    /// Builds a topology from 0-based check neighbor lists. Degree-one checks
    /// take theta positions in list order.
    pub fn new(name: impl Into<String>, a: usize, checks: Vec<Vec<usize>>) -> Result<Self, TsError> {
        for (c, nbrs) in checks.iter().enumerate() {
            let line = c + 2;
            if nbrs.is_empty() || nbrs.len() > 2 {
                return Err(TsError::NonElementary { line, degree: nbrs.len() });
            }
            if let Some(&index) = nbrs.iter().find(|&&v| v >= a) {
                return Err(TsError::IndexOutOfRange { line, index: index + 1, a });
            }
            if nbrs.len() == 2 && nbrs[0] == nbrs[1] {
                return Err(TsError::Format {
                    line,
                    msg: format!("variable {} listed twice", nbrs[0] + 1),
                });
            }
        }
        let mut degree = vec![0usize; a];
        for &v in checks.iter().flatten() {
            degree[v] += 1;
        }
        if let Some((var, &d)) = degree.iter().enumerate().find(|&(_, &d)| d > 3) {
            return Err(TsError::VariableDegree { var, degree: d });
        }
        let d1_order = (0..checks.len()).filter(|&c| checks[c].len() == 1).collect();
        Ok(Self {
            name: name.into(),
            a,
            checks,
            d1_order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn a(&self) -> usize {
        self.a
    }

    /// Number of odd-degree checks, which for an elementary set is the number
    /// of degree-one checks.
    pub fn b(&self) -> usize {
        self.d1_order.len()
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn d1_order(&self) -> &[usize] {
        &self.d1_order
    }

    pub fn var_degrees(&self) -> Vec<usize> {
        let mut degree = vec![0usize; self.a];
        for &v in self.checks.iter().flatten() {
            degree[v] += 1;
        }
        degree
    }

    /// `T(a,b)` label.
    pub fn label(&self) -> String {
        format!("T({},{})", self.a, self.b())
    }
}

/// Parses the plain-text topology format: a header `a c`, then `c` lines
/// `d v1 [v2]` with `d` in `{1, 2}` and 1-based variable indices.
pub fn parse_ts(text: &str, name: &str) -> Result<TsTopology, TsError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(TsError::Format {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums = |line: usize, text: &str| -> Result<Vec<usize>, TsError> {
        text.split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| TsError::Format {
                    line,
                    msg: format!("bad integer {t:?}"),
                })
            })
            .collect()
    };
    let head = nums(hline, header)?;
    let [a, c] = head[..] else {
        return Err(TsError::Format {
            line: hline,
            msg: "header must be \"a c\"".into(),
        });
    };
    let mut checks = Vec::with_capacity(c);
    for (line, text) in lines.by_ref().take(c) {
        let row = nums(line, text)?;
        let Some((&d, nbrs)) = row.split_first() else {
            unreachable!("blank lines are filtered");
        };
        if d == 0 || d > 2 {
            return Err(TsError::NonElementary { line, degree: d });
        }
        if nbrs.len() != d {
            return Err(TsError::DegreeMismatch {
                line,
                declared: d,
                listed: nbrs.len(),
            });
        }
        let mut zero_based = Vec::with_capacity(d);
        for &v in nbrs {
            if v == 0 || v > a {
                return Err(TsError::IndexOutOfRange { line, index: v, a });
            }
            zero_based.push(v - 1);
        }
        checks.push(zero_based);
    }
    if checks.len() != c {
        return Err(TsError::Format {
            line: hline,
            msg: format!("header announces {c} checks, found {}", checks.len()),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(TsError::Format {
            line,
            msg: "trailing content after the last check".into(),
        });
    }
    TsTopology::new(name, a, checks)
}

/// Writes a topology in the format read by [`parse_ts`].
pub fn emit_ts(ts: &TsTopology) -> String {
    let mut out = format!("{} {}\n", ts.a, ts.checks.len());
    for nbrs in &ts.checks {
        let vars: Vec<String> = nbrs.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&format!("{} {}\n", nbrs.len(), vars.join(" ")));
    }
    out
}

/// Symbols emitted by the degree-one checks, `(theta_1, ..., theta_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InitVector(pub Vec<Symbol>);

impl InitVector {
    pub fn uniform(b: usize, value: Symbol) -> Self {
        InitVector(vec![value; b])
    }

    pub fn thetas(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for InitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.level().to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A critical number: a count of errors, or infinity when no subset of the
/// topology makes the decoder fail. Infinity orders above every count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriticalNumber {
    Finite(u32),
    Infinite,
}

impl CriticalNumber {
    pub fn finite(self) -> Option<u32> {
        match self {
            CriticalNumber::Finite(n) => Some(n),
            CriticalNumber::Infinite => None,
        }
    }
}

impl fmt::Display for CriticalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriticalNumber::Finite(n) => write!(f, "{n}"),
            CriticalNumber::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for CriticalNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CriticalNumber::Finite(n) => serializer.serialize_u32(*n),
            CriticalNumber::Infinite => serializer.serialize_str("inf"),
        }
    }
}
