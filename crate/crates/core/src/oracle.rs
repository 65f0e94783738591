//! Exact backtracking search for rainbow paths and cycles on small systems.
//!
//! Vertices and colors are tracked as `u64` masks. With symmetry pruning on,
//! a color is only tried if every interchangeable color (one with an
//! identical class) of smaller index is already used; this never changes the
//! feasibility decision, only which certificate is found.

use thiserror::Error;

use crate::certificate::{RainbowCycle, RainbowPath};
use crate::system::{GraphSystem, Vertex};

pub const DEFAULT_CYCLE_CAP: usize = 12;
pub const DEFAULT_PATH_CAP: usize = 13;
const HARD_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("system is not square: {colors} colors on {n} vertices")]
    NotSquare { n: usize, colors: usize },
    #[error("n = {n} exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cycle length {len} outside 3..={n}")]
    BadLength { len: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Overrides the per-query default cap on `n`.
    pub cap: Option<usize>,
    pub symmetry_pruning: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: None,
            symmetry_pruning: true,
        }
    }
}

impl OracleOptions {
    fn check(&self, sys: &GraphSystem, default_cap: usize) -> Result<(), OracleError> {
        let cap = match self.cap {
            Some(cap) => {
                if cap > default_cap {
                    log::warn!("oracle cap raised to {cap} (default {default_cap}); search is exponential");
                }
                cap.min(HARD_LIMIT)
            }
            None => default_cap,
        };
        let n = sys.n().max(sys.color_count());
        if n > cap {
            return Err(OracleError::CapExceeded { n, cap });
        }
        Ok(())
    }
}

pub fn oracle_hamiltonian_cycle(sys: &GraphSystem) -> Result<Option<RainbowCycle>, OracleError> {
    oracle_hamiltonian_cycle_with(sys, OracleOptions::default())
}

pub fn oracle_hamiltonian_cycle_with(
    sys: &GraphSystem,
    opts: OracleOptions,
) -> Result<Option<RainbowCycle>, OracleError> {
    if !sys.is_square() {
        return Err(OracleError::NotSquare { n: sys.n(), colors: sys.color_count() });
    }
    opts.check(sys, DEFAULT_CYCLE_CAP)?;
    if sys.n() < 3 {
        return Ok(None);
    }
    Ok(Search::new(sys, opts.symmetry_pruning).cycle_from(0, sys.n()))
}

pub fn oracle_cycle_of_length(sys: &GraphSystem, len: usize) -> Result<Option<RainbowCycle>, OracleError> {
    oracle_cycle_of_length_with(sys, len, OracleOptions::default())
}

/// Rainbow cycle on exactly `len` vertices, started at its smallest vertex and
/// oriented towards the smaller of that vertex's two cycle neighbours.
pub fn oracle_cycle_of_length_with(
    sys: &GraphSystem,
    len: usize,
    opts: OracleOptions,
) -> Result<Option<RainbowCycle>, OracleError> {
    if len < 3 || len > sys.n() {
        return Err(OracleError::BadLength { len, n: sys.n() });
    }
    opts.check(sys, DEFAULT_CYCLE_CAP)?;
    let search = Search::new(sys, opts.symmetry_pruning);
    Ok((0..=sys.n() - len).find_map(|start| search.cycle_from(start, len)))
}

pub fn oracle_hamiltonian_path(sys: &GraphSystem) -> Result<Option<RainbowPath>, OracleError> {
    oracle_hamiltonian_path_with(sys, OracleOptions::default())
}

/// Rainbow path through all vertices, oriented so the first vertex is smaller
/// than the last.
pub fn oracle_hamiltonian_path_with(
    sys: &GraphSystem,
    opts: OracleOptions,
) -> Result<Option<RainbowPath>, OracleError> {
    opts.check(sys, DEFAULT_PATH_CAP)?;
    let n = sys.n();
    if n == 0 {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(RainbowPath::single(0)));
    }
    let search = Search::new(sys, opts.symmetry_pruning);
    Ok((0..n).find_map(|start| search.ham_path_from(start)))
}

struct Search {
    n: usize,
    /// `pair[u * n + v]`: mask of colors joining `u` and `v`.
    pair: Vec<u64>,
    /// Vertices joined to `v` in any color.
    reach: Vec<u64>,
    /// Interchangeable colors of smaller index, per color.
    twins_below: Vec<u64>,
    pruning: bool,
}

struct Frame {
    vertices: Vec<Vertex>,
    colors: Vec<usize>,
    used_v: u64,
    used_c: u64,
}

impl Search {
    fn new(sys: &GraphSystem, pruning: bool) -> Self {
        let n = sys.n();
        let k = sys.color_count();
        assert!(n <= HARD_LIMIT && k <= HARD_LIMIT);
        let mut pair = vec![0u64; n * n];
        let mut reach = vec![0u64; n];
        for c in 0..k {
            for u in 0..n {
                for v in sys.neighbors(c, u) {
                    pair[u * n + v] |= 1 << c;
                    reach[u] |= 1 << v;
                }
            }
        }
        let twins_below = (0..k)
            .map(|c| {
                (0..c)
                    .filter(|&d| (0..n).all(|v| sys.neighbor_words(c, v) == sys.neighbor_words(d, v)))
                    .fold(0u64, |m, d| m | 1 << d)
            })
            .collect();
        Search { n, pair, reach, twins_below, pruning }
    }

    #[inline]
    fn colors(&self, u: Vertex, v: Vertex, used_c: u64) -> u64 {
        let mut free = self.pair[u * self.n + v] & !used_c;
        if self.pruning {
            let mut m = free;
            while m != 0 {
                let c = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.twins_below[c] & !used_c != 0 {
                    free &= !(1 << c);
                }
            }
        }
        free
    }

    fn cycle_from(&self, start: Vertex, len: usize) -> Option<RainbowCycle> {
        // Only vertices above `start` may join, so `start` is the smallest.
        let allowed = !((1u64 << start) | ((1u64 << start) - 1));
        let mut frame = Frame {
            vertices: vec![start],
            colors: Vec::new(),
            used_v: 1 << start,
            used_c: 0,
        };
        if self.extend_cycle(&mut frame, allowed, len) {
            Some(RainbowCycle { vertices: frame.vertices, colors: frame.colors })
        } else {
            None
        }
    }

    fn extend_cycle(&self, f: &mut Frame, allowed: u64, len: usize) -> bool {
        let last = *f.vertices.last().unwrap();
        let start = f.vertices[0];
        if f.vertices.len() == len {
            if f.vertices[1] > last {
                return false;
            }
            let close = self.colors(last, start, f.used_c);
            if close == 0 {
                return false;
            }
            f.colors.push(close.trailing_zeros() as usize);
            return true;
        }
        let mut next = self.reach[last] & allowed & !f.used_v;
        if f.vertices.len() + 1 == len {
            next &= self.reach[start];
        }
        while next != 0 {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            if self.try_colors(f, last, x, |s, f| s.extend_cycle(f, allowed, len)) {
                return true;
            }
        }
        false
    }

    fn ham_path_from(&self, start: Vertex) -> Option<RainbowPath> {
        let mut frame = Frame {
            vertices: vec![start],
            colors: Vec::new(),
            used_v: 1 << start,
            used_c: 0,
        };
        if self.extend_path(&mut frame) {
            Some(RainbowPath { vertices: frame.vertices, colors: frame.colors })
        } else {
            None
        }
    }

    fn extend_path(&self, f: &mut Frame) -> bool {
        let last = *f.vertices.last().unwrap();
        if f.vertices.len() == self.n {
            return f.vertices[0] < last;
        }
        let mut next = self.reach[last] & !f.used_v;
        while next != 0 {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            if self.try_colors(f, last, x, |s, f| s.extend_path(f)) {
                return true;
            }
        }
        false
    }

    fn try_colors(&self, f: &mut Frame, from: Vertex, to: Vertex, mut recurse: impl FnMut(&Self, &mut Frame) -> bool) -> bool {
        let mut options = self.colors(from, to, f.used_c);
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            f.vertices.push(to);
            f.colors.push(c);
            f.used_v |= 1 << to;
            f.used_c |= 1 << c;
            if recurse(self, f) {
                return true;
            }
            f.vertices.pop();
            f.colors.pop();
            f.used_v &= !(1 << to);
            f.used_c &= !(1 << c);
        }
        false
    }
}
