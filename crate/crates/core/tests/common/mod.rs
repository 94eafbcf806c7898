//! Helpers shared by the integration tests: GF(2) linear algebra, random
//! regular codes and a small cycle-free code.

#![allow(dead_code)]

pub mod oracles;

use faid::TannerGraph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Dense parity-check rows of `g`.
pub fn dense_rows(g: &TannerGraph) -> Vec<Vec<u8>> {
    (0..g.n_chk())
        .map(|c| {
            let mut row = vec![0u8; g.n_var()];
            for &v in g.chk_neighbors(c) {
                row[v] = 1;
            }
            row
        })
        .collect()
}

/// Reduced row echelon form over GF(2); returns the pivot columns.
pub fn rref(rows: &mut [Vec<u8>]) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] == 1 {
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// A null-space basis of `g`'s parity-check matrix: one codeword per free
/// column, with that column set and the pivots solved for.
pub fn codeword_basis(g: &TannerGraph) -> Vec<Vec<u8>> {
    let mut rows = dense_rows(g);
    let pivots = rref(&mut rows);
    let n = g.n_var();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0u8; n];
            x[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = rows[r][free];
            }
            x
        })
        .collect()
}

/// Random `(dv, dc)`-regular Tanner graph without repeated edges.
pub fn random_regular(n: usize, dv: usize, dc: usize, seed: u64) -> TannerGraph {
    assert_eq!(n * dv % dc, 0);
    let m = n * dv / dc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut sockets: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, dv)).collect();
        sockets.shuffle(&mut rng);
        let checks: Vec<Vec<usize>> = sockets.chunks(dc).map(<[usize]>::to_vec).collect();
        if let Ok(g) = TannerGraph::from_checks(n, checks) {
            debug_assert_eq!(g.n_chk(), m);
            return g;
        }
    }
}

/// A cycle-free code on 12 bits: a tree of checks with degrees 2 to 4.
pub fn tree_code() -> TannerGraph {
    TannerGraph::from_checks(
        12,
        vec![
            vec![0, 1, 2],
            vec![2, 3, 4, 5],
            vec![5, 6],
            vec![6, 7, 8],
            vec![1, 9],
            vec![9, 10, 11],
        ],
    )
    .unwrap()
}

/// Every codeword of `g`, by exhaustive enumeration.
pub fn all_codewords(g: &TannerGraph) -> Vec<Vec<u8>> {
    let n = g.n_var();
    assert!(n <= 20);
    (0u32..1 << n)
        .map(|mask| (0..n).map(|i| ((mask >> i) & 1) as u8).collect::<Vec<u8>>())
        .filter(|w| g.is_codeword(w))
        .collect()
}

/// Runs a topology embedded in a full column-weight-three graph. Each
/// degree-one check gains an outside variable whose message into it is pinned
/// to the matching theta; the outside variable closes through a small gadget
/// (u on c, p1, p2; w on p1, p3, p4; z on p2, p3, p4) so every variable has
/// degree three and every check degree two or more. Returns the first
/// iteration at which every topology variable decides 0.
pub fn embedded_first_good(
    decoder: &faid::faid::FaidDecoder,
    ts: &faid::ts::TsTopology,
    errors: &[usize],
    theta: &[faid::faid::Symbol],
    n_i: usize,
) -> Option<usize> {
    let a = ts.a();
    let mut checks: Vec<Vec<usize>> = ts.checks().to_vec();
    let mut pins = Vec::new();
    for (pos, &c) in ts.d1_order().iter().enumerate() {
        let (u, w, z) = (a + 3 * pos, a + 3 * pos + 1, a + 3 * pos + 2);
        checks[c].push(u);
        checks.extend([vec![u, w], vec![u, z], vec![w, z], vec![w, z]]);
        pins.push((u, c, theta[pos]));
    }
    let n = a + 3 * ts.b();
    let graph = TannerGraph::from_checks(n, checks).unwrap();
    let mut received = vec![0u8; n];
    for &v in errors {
        received[v] = 1;
    }
    let mut session = faid::faid::FaidSession::new(decoder, &graph, &received).unwrap();
    for (u, c, t) in pins {
        session.pin(u, c, t).unwrap();
    }
    for k in 1..=n_i {
        session.step();
        if session.decisions()[..a].iter().all(|&d| d == 0) {
            return Some(k);
        }
    }
    None
}
