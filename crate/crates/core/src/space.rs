//! Counting and enumerating class-A variable maps.
//!
//! A class-A map (symmetric and lexicographically ordered) is the same object
//! as a symmetric plane partition in an `N_s x N_s x (N_s - 1)` box, so the
//! count has a closed form in staggered hyperfactorials.

use num_bigint::BigUint;
use thiserror::Error;

use crate::faid::{Symbol, VnMap};

/// Largest alphabet enumerated without an explicit override.
pub const MAX_UNGUARDED_LEVELS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("alphabet size must be odd and positive, got {0}")]
    BadSize(usize),
    #[error("enumerating {0}-level maps is not a default path; pass the override to proceed")]
    TooLarge(usize),
    #[error("map is not class-A")]
    NotClassA,
    #[error("invalid plane partition: {0}")]
    BadPartition(String),
}

fn check_size(n_s: usize) -> Result<(), SpaceError> {
    if n_s == 0 || n_s.is_multiple_of(2) || n_s > 121 {
        return Err(SpaceError::BadSize(n_s));
    }
    Ok(())
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Staggered hyperfactorial `H_k(n) = (n-k)! (n-2k)! (n-3k)! ...`, stopping at
/// the last non-negative argument.
pub fn staggered_hyperfactorial(k: u64, n: u64) -> BigUint {
    (1..)
        .map(|i| i * k)
        .take_while(|&ik| ik <= n)
        .fold(BigUint::from(1u32), |acc, ik| acc * factorial(n - ik))
}

/// Number of class-A maps for an `n_s`-level alphabet.
pub fn count_class_a(n_s: usize) -> Result<BigUint, SpaceError> {
    check_size(n_s)?;
    let n = n_s as u64;
    let h = staggered_hyperfactorial;
    let num = h(2, 3 * n) * h(1, n) * h(2, n - 1);
    let den = h(2, 2 * n + 1) * h(1, 2 * n - 1);
    debug_assert_eq!(&num % &den, BigUint::from(0u32));
    Ok(num / den)
}

/// Iterator over every class-A map of a given size, in lexicographic order of
/// the upper triangle read row by row. The position in this stream is a stable
/// identifier for a map.
#[derive(Debug, Clone)]
pub struct ClassAMaps {
    s: u8,
    n: usize,
    // upper-triangle cells (i <= j) in row-major order
    cells: Vec<(usize, usize)>,
    table: Vec<i8>,
    started: bool,
    done: bool,
}

impl ClassAMaps {
    fn new(n_s: usize) -> Self {
        let s = (n_s / 2) as u8;
        let cells = (0..n_s)
            .flat_map(|i| (i..n_s).map(move |j| (i, j)))
            .collect();
        Self {
            s,
            n: n_s,
            cells,
            table: vec![-(s as i8); n_s * n_s],
            started: false,
            done: false,
        }
    }

    fn lower_bound(&self, i: usize, j: usize) -> i8 {
        let s = -(self.s as i8);
        let above = if i > 0 { self.table[(i - 1) * self.n + j] } else { s };
        let left = if j > i { self.table[i * self.n + j - 1] } else { s };
        above.max(left)
    }

    fn set(&mut self, i: usize, j: usize, v: i8) {
        self.table[i * self.n + j] = v;
        self.table[j * self.n + i] = v;
    }

    fn current(&self) -> VnMap {
        VnMap::from_levels(self.s, &self.table).expect("entries stay in the alphabet")
    }
}

impl Iterator for ClassAMaps {
    type Item = VnMap;

    fn next(&mut self) -> Option<VnMap> {
        if self.done {
            return None;
        }
        if !self.started {
            // the all -L_s table is the smallest
            self.started = true;
            return Some(self.current());
        }
        // Odometer: bump the last cell that can grow, then reset the cells after
        // it to their smallest admissible values. Cells only have lower bounds
        // from earlier cells, so every prefix extends.
        let top = self.s as i8;
        let Some(k) = (0..self.cells.len()).rev().find(|&k| {
            let (i, j) = self.cells[k];
            self.table[i * self.n + j] < top
        }) else {
            self.done = true;
            return None;
        };
        let (i, j) = self.cells[k];
        let v = self.table[i * self.n + j] + 1;
        self.set(i, j, v);
        for idx in k + 1..self.cells.len() {
            let (i, j) = self.cells[idx];
            let lb = self.lower_bound(i, j);
            self.set(i, j, lb);
        }
        Some(self.current())
    }
}

/// Streams every class-A `n_s`-level map. Alphabets above
/// [`MAX_UNGUARDED_LEVELS`] need `allow_large`.
pub fn enumerate_class_a(n_s: usize, allow_large: bool) -> Result<ClassAMaps, SpaceError> {
    check_size(n_s)?;
    if n_s > MAX_UNGUARDED_LEVELS && !allow_large {
        return Err(SpaceError::TooLarge(n_s));
    }
    Ok(ClassAMaps::new(n_s))
}

/// Height field of a symmetric plane partition in an `N_s x N_s x (N_s - 1)` box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    side: usize,
    heights: Vec<u8>,
}

impl PlanePartition {
    pub fn new(side: usize, heights: Vec<u8>) -> Result<Self, SpaceError> {
        if heights.len() != side * side {
            return Err(SpaceError::BadPartition(format!(
                "expected {} heights, got {}",
                side * side,
                heights.len()
            )));
        }
        let pp = Self { side, heights };
        pp.check()?;
        Ok(pp)
    }

    fn check(&self) -> Result<(), SpaceError> {
        let n = self.side;
        for i in 0..n {
            for j in 0..n {
                let h = self.height(i, j);
                if h as usize >= n.max(1) {
                    return Err(SpaceError::BadPartition(format!("height {h} exceeds the box")));
                }
                if h != self.height(j, i) {
                    return Err(SpaceError::BadPartition(format!("not symmetric at ({i}, {j})")));
                }
                if (i + 1 < n && self.height(i + 1, j) > h) || (j + 1 < n && self.height(i, j + 1) > h) {
                    return Err(SpaceError::BadPartition(format!("increases after ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Height at 0-based `(i, j)`.
    pub fn height(&self, i: usize, j: usize) -> u8 {
        self.heights[i * self.side + j]
    }

    pub fn heights(&self) -> &[u8] {
        &self.heights
    }
}

/// `pi[i][j] = N_s - k` where `l[i][j] = M_k` (1-based `k`).
pub fn to_plane_partition(map: &VnMap) -> Result<PlanePartition, SpaceError> {
    if !map.is_class_a() {
        return Err(SpaceError::NotClassA);
    }
    let n = map.size();
    let s = map.s();
    let heights = map
        .table()
        .iter()
        .map(|m| (n - (m.index(s) + 1)) as u8)
        .collect();
    PlanePartition::new(n, heights)
}

pub fn from_plane_partition(pp: &PlanePartition) -> Result<VnMap, SpaceError> {
    pp.check()?;
    let n = pp.side();
    check_size(n)?;
    let s = (n / 2) as u8;
    let table = pp
        .heights()
        .iter()
        .map(|&h| Symbol::from_index(n - 1 - h as usize, s))
        .collect();
    VnMap::from_table(s, table).map_err(|e| SpaceError::BadPartition(e.to_string()))
}
