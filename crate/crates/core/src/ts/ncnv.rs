use rayon::prelude::*;
use serde::Serialize;

use super::run::{CriticalSearch, Engine};
use super::{CriticalNumber, InitVector, TsError, TsTopology};
use crate::faid::{FaidDecoder, Symbol};

/// Default cap on `|M|^b`: every 7-level vector for `b <= 3`.
pub const DEFAULT_NCNV_BUDGET: u128 = 343;

/// `N_s^b`, saturating.
pub fn theta_count(n_s: usize, b: usize) -> u128 {
    (0..b).fold(1u128, |acc, _| acc.saturating_mul(n_s as u128))
}

/// The initialization vector at position `index` of the canonical order: the
/// base-`N_s` digits of `index`, `theta_1` most significant, digit `d`
/// standing for level `d - s`.
pub fn theta_at(index: usize, s: u8, b: usize) -> InitVector {
    let n_s = 2 * s as usize + 1;
    let mut digits = vec![Symbol::ZERO; b];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = Symbol::from_index(rest % n_s, s);
        rest /= n_s;
    }
    InitVector(digits)
}

/// Noisy critical numbers of one decoder on one topology for every
/// initialization vector, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ncnv {
    pub topology: String,
    pub decoder: String,
    #[serde(rename = "N_I")]
    pub n_i: usize,
    /// Levels of each initialization vector, in the order of `values`.
    pub theta_order: Vec<Vec<i8>>,
    pub values: Vec<CriticalNumber>,
}

impl Ncnv {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn b(&self) -> usize {
        self.theta_order.first().map_or(0, Vec::len)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// One row per initialization vector: index, theta levels, value.
    pub fn to_csv(&self) -> String {
        let thetas: Vec<String> = (1..=self.b()).map(|i| format!("theta_{i}")).collect();
        let mut out = format!("index,{},value\n", thetas.join(","));
        for (i, (theta, value)) in self.theta_order.iter().zip(&self.values).enumerate() {
            let levels: Vec<String> = theta.iter().map(i8::to_string).collect();
            out.push_str(&format!("{i},{},{value}\n", levels.join(",")));
        }
        out
    }
}

/// [`ncnv_with_budget`] under [`DEFAULT_NCNV_BUDGET`].
pub fn ncnv(decoder: &FaidDecoder, ts: &TsTopology, n_i: usize) -> Result<Ncnv, TsError> {
    ncnv_with_budget(decoder, ts, n_i, DEFAULT_NCNV_BUDGET)
}

pub fn ncnv_with_budget(
    decoder: &FaidDecoder,
    ts: &TsTopology,
    n_i: usize,
    budget: u128,
) -> Result<Ncnv, TsError> {
    if n_i == 0 {
        return Err(TsError::ZeroIterations);
    }
    let s = decoder.alphabet().s();
    let b = ts.b();
    let size = theta_count(decoder.alphabet().size(), b);
    if size > budget {
        return Err(TsError::BudgetExceeded { size, budget });
    }
    let engine = Engine::new(decoder, ts)?;
    let thetas: Vec<InitVector> = (0..size as usize).map(|i| theta_at(i, s, b)).collect();
    let values = thetas
        .par_iter()
        .map(|theta| {
            let t = theta.thetas();
            let CriticalSearch { number, .. } = engine.search(|pos, _| t[pos], n_i);
            number
        })
        .collect();
    Ok(Ncnv {
        topology: ts.name().to_string(),
        decoder: decoder_id(decoder),
        n_i,
        theta_order: thetas
            .iter()
            .map(|t| t.thetas().iter().map(|m| m.level()).collect())
            .collect(),
        values,
    })
}

fn decoder_id(decoder: &FaidDecoder) -> String {
    let levels: Vec<String> = decoder.map().table().iter().map(|m| m.level().to_string()).collect();
    format!("faid{}[{}]", decoder.alphabet().size(), levels.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        assert_eq!(theta_count(7, 2), 49);
        assert_eq!(theta_count(7, 3), 343);
        assert_eq!(theta_at(0, 3, 2).thetas(), &[Symbol::new(-3), Symbol::new(-3)]);
        assert_eq!(theta_at(1, 3, 2).thetas(), &[Symbol::new(-3), Symbol::new(-2)]);
        assert_eq!(theta_at(7, 3, 2).thetas(), &[Symbol::new(-2), Symbol::new(-3)]);
        assert_eq!(theta_at(48, 3, 2).thetas(), &[Symbol::new(3), Symbol::new(3)]);
        assert!(theta_at(0, 3, 0).is_empty());
    }
}
