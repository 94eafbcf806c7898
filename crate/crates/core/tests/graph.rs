mod common;

use std::collections::{HashSet, VecDeque};

use faid::fixtures;
use faid::graph::{emit_alist, parse_alist, GraphError};
use faid::TannerGraph;
use proptest::prelude::*;

/// Shortest cycle through each edge: drop the edge, then the shortest path
/// between its endpoints closes the cycle.
fn girth_oracle(g: &TannerGraph) -> Option<usize> {
    let n = g.n_var();
    let mut best = None::<usize>;
    for v in 0..n {
        for &c in g.var_neighbors(v) {
            let target = n + c;
            let mut dist = vec![usize::MAX; n + g.n_chk()];
            let mut queue = VecDeque::from([v]);
            dist[v] = 0;
            while let Some(u) = queue.pop_front() {
                let nbrs: Vec<usize> = if u < n {
                    g.var_neighbors(u).iter().map(|&x| x + n).collect()
                } else {
                    g.chk_neighbors(u - n).to_vec()
                };
                for w in nbrs {
                    let skipped = (u == v && w == target) || (u == target && w == v);
                    if !skipped && dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if dist[target] != usize::MAX {
                let len = dist[target] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

fn arb_graph() -> impl Strategy<Value = TannerGraph> {
    (1usize..9, 1usize..7).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n.min(4)), m).prop_map(move |checks| {
            TannerGraph::from_checks(n, checks.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap()
        })
    })
}

fn edge_set(g: &TannerGraph) -> HashSet<(usize, usize)> {
    (0..g.n_var())
        .flat_map(|v| g.var_neighbors(v).iter().map(move |&c| (v, c)))
        .collect()
}

#[test]
fn tanner_code_structure() {
    let code = fixtures::tanner_code();
    let g = &code.graph;
    assert_eq!((g.n_var(), g.n_chk()), (155, 93));
    assert!(g.var_degrees().all(|d| d == 3));
    assert!(g.chk_degrees().all(|d| d == 5));
    assert_eq!(g.girth(), Some(8));
    assert_eq!(girth_oracle(g), Some(8));
}

#[test]
fn tanner_code_has_dimension_64() {
    let code = fixtures::tanner_code();
    let basis = common::codeword_basis(&code.graph);
    assert_eq!(basis.len(), 64);
    for word in &basis {
        assert!(word.iter().any(|&b| b == 1));
        assert!(code.graph.syndrome(word).unwrap().iter().all(|&s| s == 0));
    }
    // a nonzero combination is also a codeword
    let sum: Vec<u8> = basis.iter().take(5).fold(vec![0u8; 155], |acc, w| {
        acc.iter().zip(w).map(|(a, b)| a ^ b).collect()
    });
    assert!(code.graph.is_codeword(&sum));
}

#[test]
fn small_girths() {
    let tree = TannerGraph::from_checks(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
    assert_eq!(tree.girth(), None);
    let four = TannerGraph::from_checks(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
    assert_eq!(four.girth(), Some(4));
}

#[test]
fn spc_fixture() {
    let code = parse_alist(fixtures::SPC3, "spc").unwrap();
    assert_eq!(code.graph.n_edges(), 3);
    assert_eq!(code.graph.syndrome(&[1, 0, 0]).unwrap(), vec![1]);
    assert!(code.graph.syndrome(&[1, 0]).is_err());
}

#[test]
fn inconsistent_alist_rejected() {
    let text = "2 2\n2 1\n2 1\n1 1\n1 2\n2 0\n1\n2\n";
    assert!(matches!(parse_alist(text, "x"), Err(GraphError::Inconsistent { .. })));
}

proptest! {
    #[test]
    fn alist_round_trip(g in arb_graph()) {
        let back = parse_alist(&emit_alist(&g), "rt").unwrap();
        prop_assert_eq!(edge_set(&back.graph), edge_set(&g));
        prop_assert_eq!(back.graph.n_chk(), g.n_chk());
    }

    #[test]
    fn girth_matches_oracle(g in arb_graph()) {
        prop_assert_eq!(g.girth(), girth_oracle(&g));
    }

    #[test]
    fn syndrome_is_linear(
        g in arb_graph(),
        seed in any::<u64>(),
    ) {
        let n = g.n_var();
        let x: Vec<u8> = (0..n).map(|i| ((seed >> i) & 1) as u8).collect();
        let y: Vec<u8> = (0..n).map(|i| ((seed >> (i + 20)) & 1) as u8).collect();
        let xy: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
        let sx = g.syndrome(&x).unwrap();
        let sy = g.syndrome(&y).unwrap();
        let sxy: Vec<u8> = sx.iter().zip(&sy).map(|(a, b)| a ^ b).collect();
        prop_assert_eq!(g.syndrome(&xy).unwrap(), sxy);
    }

    #[test]
    fn random_regular_girth(seed in 0u64..20) {
        let g = common::random_regular(24, 3, 6, seed);
        prop_assert_eq!(g.girth(), girth_oracle(&g));
    }
}
