//! Tanner graphs, the alist interchange format, and structural queries.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Errors raised while reading an alist file or assembling a graph.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("malformed alist header: {0}")]
    MalformedHeader(String),
    #[error("unexpected end of alist input while reading {0}")]
    Truncated(&'static str),
    #[error("invalid integer {token:?} on line {line}")]
    BadInteger { line: usize, token: String },
    #[error("{side} node {node} declares degree {declared} but lists {listed} neighbors")]
    DegreeMismatch {
        side: &'static str,
        node: usize,
        declared: usize,
        listed: usize,
    },
    #[error("{side} node {node} lists neighbor {index}, outside 1..={bound}")]
    IndexOutOfRange {
        side: &'static str,
        node: usize,
        index: usize,
        bound: usize,
    },
    #[error("duplicate edge between variable {var} and check {check}")]
    DuplicateEdge { var: usize, check: usize },
    #[error("variable {var} lists check {check} but check {check} does not list variable {var}")]
    Inconsistent { var: usize, check: usize },
    #[error("rate hint K/N = {0} is outside (0, 1)")]
    BadRate(f64),
}

/// Bipartite graph of variable nodes and check nodes, stored from both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    var_adj: Vec<Vec<usize>>,
    chk_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    /// Builds a graph from check-node neighbor lists (0-based variable indices).
    pub fn from_checks(n_var: usize, checks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut var_adj = vec![Vec::new(); n_var];
        for (c, vars) in checks.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in vars {
                if v >= n_var {
                    return Err(GraphError::IndexOutOfRange {
                        side: "check",
                        node: c + 1,
                        index: v + 1,
                        bound: n_var,
                    });
                }
                if !seen.insert(v) {
                    return Err(GraphError::DuplicateEdge { var: v + 1, check: c + 1 });
                }
                var_adj[v].push(c);
            }
        }
        Ok(Self {
            var_adj,
            chk_adj: checks,
        })
    }

    pub fn n_var(&self) -> usize {
        self.var_adj.len()
    }

    pub fn n_chk(&self) -> usize {
        self.chk_adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    /// Checks adjacent to variable `v`.
    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    /// Variables adjacent to check `c`.
    pub fn chk_neighbors(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    pub fn var_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.var_adj.iter().map(Vec::len)
    }

    pub fn chk_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.chk_adj.iter().map(Vec::len)
    }

    /// True when every variable node has exactly `dv` neighbors.
    pub fn is_column_regular(&self, dv: usize) -> bool {
        self.var_adj.iter().all(|n| n.len() == dv)
    }

    /// Modulo-two sums of `bits` over each check neighborhood.
    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>, LengthMismatch> {
        if bits.len() != self.n_var() {
            return Err(LengthMismatch {
                expected: self.n_var(),
                got: bits.len(),
            });
        }
        Ok(self
            .chk_adj
            .iter()
            .map(|vars| vars.iter().fold(0u8, |acc, &v| acc ^ (bits[v] & 1)))
            .collect())
    }

    /// True iff `bits` satisfies every check. Panics on a length mismatch.
    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        assert_eq!(bits.len(), self.n_var());
        self.chk_adj
            .iter()
            .all(|vars| vars.iter().fold(0u8, |acc, &v| acc ^ (bits[v] & 1)) == 0)
    }

    /// Length of the shortest cycle, or `None` when the graph is a forest.
    ///
    /// Runs a breadth-first search from every variable node. Every cycle in a
    /// bipartite graph passes through a variable node, so this covers all of them.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n_var() + self.n_chk();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..self.n_var() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                // Nothing shorter than the current best can come from deeper nodes.
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for w in self.node_neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    // Unified node numbering: variables 0..N, checks N..N+M.
    fn node_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n_var();
        let (list, offset) = if u < n {
            (&self.var_adj[u], n)
        } else {
            (&self.chk_adj[u - n], 0)
        };
        list.iter().map(move |&x| x + offset)
    }
}

/// Input vector length does not match the graph.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("expected a vector of length {expected}, got {got}")]
pub struct LengthMismatch {
    pub expected: usize,
    pub got: usize,
}

/// An LDPC code: its Tanner graph plus descriptive metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Code {
    pub graph: TannerGraph,
    pub name: String,
    rate_hint: Option<f64>,
}

impl Code {
    pub fn new(graph: TannerGraph, name: impl Into<String>) -> Self {
        Self {
            graph,
            name: name.into(),
            rate_hint: None,
        }
    }

    pub fn with_rate_hint(mut self, rate: f64) -> Result<Self, GraphError> {
        if !(rate > 0.0 && rate < 1.0) {
            return Err(GraphError::BadRate(rate));
        }
        self.rate_hint = Some(rate);
        Ok(self)
    }

    pub fn rate_hint(&self) -> Option<f64> {
        self.rate_hint
    }

    pub fn n(&self) -> usize {
        self.graph.n_var()
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as integers, with its 1-based line number.
    fn next_ints(&mut self, what: &'static str) -> Result<(usize, Vec<usize>), GraphError> {
        for (i, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let ints = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| GraphError::BadInteger {
                        line: i + 1,
                        token: t.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((i + 1, ints));
        }
        Err(GraphError::Truncated(what))
    }
}

/// Parses a code in alist format. Indices are 1-based on disk; zero entries
/// in the neighbor lists are padding and are skipped.
pub fn parse_alist(text: &str, name: &str) -> Result<Code, GraphError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (_, dims) = lines.next_ints("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(GraphError::MalformedHeader(format!(
            "line 1 must hold \"N M\", found {} values",
            dims.len()
        )));
    };
    let (_, maxdeg) = lines.next_ints("maximum degrees")?;
    if maxdeg.len() != 2 {
        return Err(GraphError::MalformedHeader(
            "line 2 must hold \"max_var_deg max_chk_deg\"".into(),
        ));
    }
    let (_, var_deg) = lines.next_ints("variable degrees")?;
    if var_deg.len() != n {
        return Err(GraphError::MalformedHeader(format!(
            "expected {n} variable degrees, found {}",
            var_deg.len()
        )));
    }
    let (_, chk_deg) = lines.next_ints("check degrees")?;
    if chk_deg.len() != m {
        return Err(GraphError::MalformedHeader(format!(
            "expected {m} check degrees, found {}",
            chk_deg.len()
        )));
    }

    let read_side = |lines: &mut Lines,
                     count: usize,
                     degrees: &[usize],
                     bound: usize,
                     side: &'static str|
     -> Result<Vec<Vec<usize>>, GraphError> {
        let mut adj = Vec::with_capacity(count);
        for node in 0..count {
            let (_, raw) = lines.next_ints(side)?;
            let mut list = Vec::with_capacity(raw.len());
            for idx in raw.into_iter().filter(|&x| x != 0) {
                if idx > bound {
                    return Err(GraphError::IndexOutOfRange {
                        side,
                        node: node + 1,
                        index: idx,
                        bound,
                    });
                }
                list.push(idx - 1);
            }
            if list.len() != degrees[node] {
                return Err(GraphError::DegreeMismatch {
                    side,
                    node: node + 1,
                    declared: degrees[node],
                    listed: list.len(),
                });
            }
            adj.push(list);
        }
        Ok(adj)
    };

    let var_adj = read_side(&mut lines, n, &var_deg, m, "variable")?;
    let chk_adj = read_side(&mut lines, m, &chk_deg, n, "check")?;

    for (v, checks) in var_adj.iter().enumerate() {
        let mut seen = HashSet::new();
        for &c in checks {
            if !seen.insert(c) {
                return Err(GraphError::DuplicateEdge { var: v + 1, check: c + 1 });
            }
        }
    }
    let mut from_checks: HashSet<(usize, usize)> = HashSet::new();
    for (c, vars) in chk_adj.iter().enumerate() {
        for &v in vars {
            if !from_checks.insert((v, c)) {
                return Err(GraphError::DuplicateEdge { var: v + 1, check: c + 1 });
            }
        }
    }
    for (v, checks) in var_adj.iter().enumerate() {
        for &c in checks {
            if !from_checks.remove(&(v, c)) {
                return Err(GraphError::Inconsistent { var: v + 1, check: c + 1 });
            }
        }
    }
    if let Some(&(v, c)) = from_checks.iter().min() {
        return Err(GraphError::Inconsistent { var: v + 1, check: c + 1 });
    }

    Ok(Code::new(TannerGraph { var_adj, chk_adj }, name))
}

/// Writes `graph` in alist format with zero padding up to the maximum degree.
pub fn emit_alist(graph: &TannerGraph) -> String {
    let max_v = graph.var_degrees().max().unwrap_or(0);
    let max_c = graph.chk_degrees().max().unwrap_or(0);
    let join = |it: &mut dyn Iterator<Item = usize>| {
        it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.n_var(), graph.n_chk());
    let _ = writeln!(out, "{max_v} {max_c}");
    let _ = writeln!(out, "{}", join(&mut graph.var_degrees()));
    let _ = writeln!(out, "{}", join(&mut graph.chk_degrees()));
    for (lists, width) in [(&graph.var_adj, max_v), (&graph.chk_adj, max_c)] {
        for list in lists {
            let padded = list
                .iter()
                .map(|&x| x + 1)
                .chain(std::iter::repeat(0))
                .take(width);
            let _ = writeln!(out, "{}", join(&mut padded.into_iter()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPC3: &str = "3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 3\n";

    #[test]
    fn single_parity_check() {
        let code = parse_alist(SPC3, "spc").unwrap();
        assert_eq!(code.graph.n_edges(), 3);
        assert_eq!(code.graph.syndrome(&[1, 0, 0]).unwrap(), vec![1]);
        assert_eq!(code.graph.syndrome(&[0, 0, 0]).unwrap(), vec![0]);
        assert_eq!(code.graph.girth(), None);
    }

    #[test]
    fn one_sided_edge_is_rejected() {
        // variable 1 lists check 2, check 2 lists variable 2 only
        let text = "2 2\n2 1\n2 1\n1 1\n1 2\n2 0\n1\n2\n";
        assert_eq!(
            parse_alist(text, "bad"),
            Err(GraphError::Inconsistent { var: 1, check: 2 })
        );
    }

    #[test]
    fn malformed_inputs_have_distinct_errors() {
        assert!(matches!(
            parse_alist("3\n", "x"),
            Err(GraphError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n4\n1 2 3\n", "x"),
            Err(GraphError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 2\n", "x"),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n", "x"),
            Err(GraphError::Truncated(_))
        ));
        assert!(matches!(
            parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 x\n", "x"),
            Err(GraphError::BadInteger { line: 8, .. })
        ));
    }

    #[test]
    fn girth_small_cases() {
        // two variables sharing two checks
        let g = TannerGraph::from_checks(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(g.girth(), Some(4));
        // path: v0 - c0 - v1 - c1 - v2
        let g = TannerGraph::from_checks(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(g.girth(), None);
        // 6-cycle through three variables
        let g = TannerGraph::from_checks(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(g.girth(), Some(6));
    }

    #[test]
    fn rate_hint_bounds() {
        let code = parse_alist(SPC3, "spc").unwrap();
        assert!(code.clone().with_rate_hint(2.0 / 3.0).is_ok());
        assert!(code.clone().with_rate_hint(1.0).is_err());
        assert!(code.with_rate_hint(0.0).is_err());
    }

    #[test]
    fn syndrome_length_mismatch() {
        let code = parse_alist(SPC3, "spc").unwrap();
        assert_eq!(
            code.graph.syndrome(&[0, 1]),
            Err(LengthMismatch { expected: 3, got: 2 })
        );
    }
}
