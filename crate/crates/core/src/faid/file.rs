//! The text format for table-defined decoders.
//!
//! ```text
//! faid 1
//! levels 7
//! values 1 2 3        (optional)
//! C 1.5               (optional)
//! -3 -3 -3 -3 -3 -3 -1
//! ...                 (N_s rows of N_s signed levels, the -C table)
//! ```

use std::fmt::Write as _;

use super::{FaidError, MessageAlphabet, Symbol, VnMap};

/// A parsed decoder description: the map plus the value binding used by the
/// decision rule.
#[derive(Debug, Clone, PartialEq)]
pub struct FaidFile {
    pub map: VnMap,
    pub alphabet: MessageAlphabet,
}

fn err(line: usize, msg: impl Into<String>) -> FaidError {
    FaidError::Format {
        line,
        msg: msg.into(),
    }
}

pub fn parse_faid(text: &str) -> Result<FaidFile, FaidError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let (no, magic) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["faid", "1"] {
        return Err(err(no, "expected header \"faid 1\""));
    }
    let (no, lv) = lines.next().ok_or_else(|| err(no + 1, "missing levels line"))?;
    let n_s = match lv.split_whitespace().collect::<Vec<_>>()[..] {
        ["levels", n] => n
            .parse::<usize>()
            .map_err(|_| err(no, format!("bad level count {n:?}")))?,
        _ => return Err(err(no, "expected \"levels <N_s>\"")),
    };
    if n_s % 2 == 0 || n_s > 121 {
        return Err(err(no, format!("level count must be odd and at most 121, got {n_s}")));
    }
    let s = (n_s / 2) as u8;

    let mut levels: Option<Vec<f64>> = None;
    let mut channel: Option<f64> = None;
    while let Some(&(no, line)) = lines.peek() {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("values") => {
                let vals = toks
                    .map(|t| t.parse::<f64>().map_err(|_| err(no, format!("bad value {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if vals.len() != s as usize {
                    return Err(err(no, format!("expected {s} level values, got {}", vals.len())));
                }
                levels = Some(vals);
            }
            Some("C") => {
                let t = toks.next().ok_or_else(|| err(no, "missing C value"))?;
                channel = Some(t.parse().map_err(|_| err(no, format!("bad C value {t:?}")))?);
            }
            _ => break,
        }
        lines.next();
    }

    let mut table = Vec::with_capacity(n_s * n_s);
    for row in 0..n_s {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(0, format!("expected {n_s} table rows, found {row}")))?;
        let entries = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i8>()
                    .ok()
                    .filter(|k| k.unsigned_abs() <= s)
                    .map(Symbol::new)
                    .ok_or_else(|| err(no, format!("entry {t:?} is not in -{s}..{s}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != n_s {
            return Err(err(no, format!("expected {n_s} entries, got {}", entries.len())));
        }
        table.extend(entries);
    }
    if let Some((no, _)) = lines.next() {
        return Err(err(no, "trailing content after the table"));
    }

    let defaults = MessageAlphabet::with_defaults(s);
    let alphabet = match (levels, channel) {
        (None, None) => defaults,
        (levels, channel) => {
            let levels = levels.unwrap_or_else(|| defaults.levels().to_vec());
            MessageAlphabet::new(
                levels.clone(),
                levels,
                channel.unwrap_or(defaults.channel_magnitude()),
            )?
        }
    };
    Ok(FaidFile {
        map: VnMap::from_table(s, table)?,
        alphabet,
    })
}

pub fn emit_faid(map: &VnMap, alphabet: &MessageAlphabet) -> String {
    let n = map.size();
    let mut out = String::new();
    let _ = writeln!(out, "faid 1");
    let _ = writeln!(out, "levels {n}");
    let vals: Vec<String> = alphabet.levels().iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "values {}", vals.join(" "));
    let _ = writeln!(out, "C {}", alphabet.channel_magnitude());
    for row in map.table().chunks(n) {
        let row: Vec<String> = row.iter().map(|m| m.level().to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
