//! Linear-threshold versus non-linear-threshold classification of `Phi_v`.

use std::collections::BTreeMap;

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};
use serde::Serialize;

use super::{MessageAlphabet, Symbol, VnMap};

/// Margins at or below this are treated as infeasible.
pub const MARGIN_TOLERANCE: f64 = 1e-9;

/// Outcome of the syntactic NLT test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum NltCertificate {
    /// Two zero-sum input pairs, `(-L_i, +L_i)` or `(0, 0)`, map to different
    /// outputs, which no function of the sum alone can do.
    ZeroSum {
        first: ((i8, i8), i8),
        second: ((i8, i8), i8),
    },
    /// The four-entry premise `Phi_v(-C,-L1,L2) = -L1`, `Phi_v(-C,0,L1) = 0`,
    /// `Phi_v(-C,0,-L2) = -L3`, `Phi_v(-C,-L1,-L1) = -L2` holds; it forces
    /// `2 L1 > L2` and `L2 > 2 L1` at once.
    FourEntryPremise,
    /// Neither rule applies. This does not imply the map is LT.
    Inconclusive,
}

impl NltCertificate {
    pub fn nlt_proven(&self) -> bool {
        !matches!(self, NltCertificate::Inconclusive)
    }
}

fn sym(k: i8) -> Symbol {
    Symbol::new(k)
}

pub fn nlt_certificate(map: &VnMap) -> NltCertificate {
    let s = map.s() as i8;
    let zero_out = map.minus_entry(Symbol::ZERO, Symbol::ZERO);
    for i in (1..=s).rev() {
        let out = map.minus_entry(sym(-i), sym(i));
        if out != zero_out {
            return NltCertificate::ZeroSum {
                first: ((-i, i), out.level()),
                second: ((0, 0), zero_out.level()),
            };
        }
    }
    if s >= 3 {
        let e = |a: i8, b: i8| map.minus_entry(sym(a), sym(b)).level();
        if e(-1, 2) == -1 && e(0, 1) == 0 && e(0, -2) == -3 && e(-1, -1) == -2 {
            return NltCertificate::FourEntryPremise;
        }
    }
    NltCertificate::Inconclusive
}

/// A real-valued binding under which `Q(m1 + m2 - C)` reproduces a table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LtBinding {
    pub levels: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub channel: f64,
    pub margin: f64,
}

impl LtBinding {
    pub fn alphabet(&self) -> Option<MessageAlphabet> {
        MessageAlphabet::new(self.levels.clone(), self.thresholds.clone(), self.channel).ok()
    }
}

/// Searches for `L_1 < ... < L_s`, `T_1 < ... < T_s`, `C > 0` reproducing the
/// `-C` table through the quantizer.
///
/// Strict inequalities get a common slack `eps`, which is maximized (capped at
/// 1; the problem is scale-invariant). The table is LT iff the best `eps` is
/// positive.
pub fn lt_representation(map: &VnMap) -> Option<LtBinding> {
    let s = map.s() as usize;
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let levels: Vec<Variable> = (0..s).map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let thresholds: Vec<Variable> = (0..s).map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let channel = lp.add_var(0.0, (0.0, f64::INFINITY));
    let eps = lp.add_var(1.0, (0.0, 1.0));

    // expr - eps >= 0
    let strict = |lp: &mut Problem, mut expr: Vec<(Variable, f64)>| {
        expr.push((eps, -1.0));
        lp.add_constraint(merged(expr), ComparisonOp::Ge, 0.0);
    };

    strict(&mut lp, vec![(levels[0], 1.0)]);
    strict(&mut lp, vec![(thresholds[0], 1.0)]);
    strict(&mut lp, vec![(channel, 1.0)]);
    for k in 1..s {
        strict(&mut lp, vec![(levels[k], 1.0), (levels[k - 1], -1.0)]);
        strict(&mut lp, vec![(thresholds[k], 1.0), (thresholds[k - 1], -1.0)]);
    }

    let symbols: Vec<Symbol> = (-(s as i8)..=s as i8).map(Symbol::new).collect();
    for &a in &symbols {
        for &b in &symbols {
            let target = map.minus_entry(a, b);
            // x = value(a) + value(b) - C as a linear form
            let mut x: Vec<(Variable, f64)> = vec![(channel, -1.0)];
            for m in [a, b] {
                if m.level() != 0 {
                    let sign = if m.is_negative() { -1.0 } else { 1.0 };
                    x.push((levels[m.magnitude() as usize - 1], sign));
                }
            }
            let scaled = |factor: f64| x.iter().map(|&(v, c)| (v, c * factor)).collect::<Vec<_>>();
            match target.level() {
                0 => {
                    // |x| < T_1
                    let mut hi = scaled(-1.0);
                    hi.push((thresholds[0], 1.0));
                    strict(&mut lp, hi);
                    let mut lo = scaled(1.0);
                    lo.push((thresholds[0], 1.0));
                    strict(&mut lp, lo);
                }
                k => {
                    // sign * x in [T_k, T_{k+1})
                    let sign = if k < 0 { -1.0 } else { 1.0 };
                    let k = k.unsigned_abs() as usize;
                    let mut lower = scaled(sign);
                    lower.push((thresholds[k - 1], -1.0));
                    lp.add_constraint(merged(lower), ComparisonOp::Ge, 0.0);
                    if k < s {
                        let mut upper = scaled(-sign);
                        upper.push((thresholds[k], 1.0));
                        strict(&mut lp, upper);
                    }
                }
            }
        }
    }

    let solution = lp.solve().ok()?;
    let margin = *solution.var_value(eps);
    if margin <= MARGIN_TOLERANCE {
        return None;
    }
    Some(LtBinding {
        levels: levels.iter().map(|&v| *solution.var_value(v)).collect(),
        thresholds: thresholds.iter().map(|&v| *solution.var_value(v)).collect(),
        channel: *solution.var_value(channel),
        margin,
    })
}

// The solver wants each variable at most once per row, in index order.
fn merged(terms: Vec<(Variable, f64)>) -> Vec<(Variable, f64)> {
    let mut rows: BTreeMap<usize, (Variable, f64)> = BTreeMap::new();
    for (v, c) in terms {
        rows.entry(v.idx()).or_insert((v, 0.0)).1 += c;
    }
    rows.into_values().filter(|&(_, c)| c != 0.0).collect()
}

pub fn is_lt_representable(map: &VnMap) -> bool {
    lt_representation(map).is_some()
}
