//! Rainbow Hamiltonian paths by greedy extension plus close-and-reopen.
//!
//! When the path `P` can no longer be extended at either end, two unused
//! colors close it into a rainbow cycle on `V(P)`; an edge in a third unused
//! color from that cycle to an outside vertex then reopens it into a path with
//! one more vertex. With every color class of minimum degree at least
//! `(n - 1) / 2` neither step can fail.

use thiserror::Error;

use crate::certificate::{verify_rainbow_path, RainbowCycle, RainbowPath, Violation};
use crate::rotation::{close_rainbow_cycle, RotationError};
use crate::system::GraphSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamPathError {
    #[error("system is not square: {colors} colors on {n} vertices")]
    NotSquare { n: usize, colors: usize },
    #[error("system has no vertices")]
    Empty,
    #[error("input is not a rainbow path: {0}")]
    InvalidPath(Violation),
    #[error("stuck at a rainbow path on {} of {n} vertices", longest.len())]
    Stuck { longest: RainbowPath, n: usize },
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

fn require_square(sys: &GraphSystem) -> Result<(), HamPathError> {
    if !sys.is_square() {
        return Err(HamPathError::NotSquare {
            n: sys.n(),
            colors: sys.color_count(),
        });
    }
    if sys.n() == 0 {
        return Err(HamPathError::Empty);
    }
    Ok(())
}

/// One more vertex attached at either end through an unused color, or `None`
/// if no (endpoint, unused color, outside vertex) triple exists.
///
/// Tries the last vertex before the first; colors and then outside vertices
/// ascending.
pub fn extend_path(sys: &GraphSystem, path: &RainbowPath) -> Result<Option<RainbowPath>, HamPathError> {
    require_square(sys)?;
    verify_rainbow_path(sys, path)
        .into_result()
        .map_err(HamPathError::InvalidPath)?;
    Ok(extend_unchecked(sys, path))
}

fn extend_unchecked(sys: &GraphSystem, path: &RainbowPath) -> Option<RainbowPath> {
    let on_path = path.vertex_set(sys.n());
    let used = path.color_set(sys.color_count());
    for at_tail in [true, false] {
        let end = if at_tail { path.last() } else { path.first() };
        for c in (0..sys.color_count()).filter(|&c| !used.contains(c)) {
            let Some(x) = sys.neighbors(c, end).find(|&x| !on_path.contains(x)) else {
                continue;
            };
            let mut next = path.clone();
            if at_tail {
                next.vertices.push(x);
                next.colors.push(c);
            } else {
                next.vertices.insert(0, x);
                next.colors.insert(0, c);
            }
            return Some(next);
        }
    }
    None
}

/// Opens a rainbow cycle into a path with one more vertex: picks an edge
/// `w_j x` in a color unused on the cycle with `x` off the cycle, and returns
/// `x w_j w_{j-1} .. w_1 w_k .. w_{j+1}`.
///
/// Unused colors are scanned ascending, then cycle positions, then `x`.
pub fn reopen_cycle(sys: &GraphSystem, cycle: &RainbowCycle) -> Option<RainbowPath> {
    let on_cycle = cycle.vertex_set(sys.n());
    let used = cycle.color_set(sys.color_count());
    let k = cycle.len();
    for c in (0..sys.color_count()).filter(|&c| !used.contains(c)) {
        for j in 0..k {
            let w = cycle.vertices[j];
            let Some(x) = sys.neighbors(c, w).find(|&x| !on_cycle.contains(x)) else {
                continue;
            };
            let mut vertices = Vec::with_capacity(k + 1);
            let mut colors = Vec::with_capacity(k);
            vertices.push(x);
            colors.push(c);
            // Walk backwards from w_j; edge (w_m, w_{m-1}) has color colors[m-1].
            for step in 0..k {
                let m = (j + k - step) % k;
                vertices.push(cycle.vertices[m]);
                if step + 1 < k {
                    colors.push(cycle.colors[(m + k - 1) % k]);
                }
            }
            return Some(RainbowPath { vertices, colors });
        }
    }
    None
}

/// Finds a rainbow Hamiltonian path in a square system.
pub fn find_rainbow_hamiltonian_path(sys: &GraphSystem) -> Result<RainbowPath, HamPathError> {
    find_rainbow_hamiltonian_path_observed(sys, |_| {})
}

/// As [`find_rainbow_hamiltonian_path`], reporting the current path order to
/// `observe` at the top of every iteration.
pub fn find_rainbow_hamiltonian_path_observed<F>(
    sys: &GraphSystem,
    mut observe: F,
) -> Result<RainbowPath, HamPathError>
where
    F: FnMut(usize),
{
    require_square(sys)?;
    let n = sys.n();
    let mut path = RainbowPath::single(0);
    for _ in 0..n * (n + 2) {
        observe(path.len());
        if path.len() == n {
            return Ok(path);
        }
        if let Some(next) = extend_unchecked(sys, &path) {
            path = next;
            continue;
        }
        if path.len() < 3 {
            break;
        }
        let used = path.color_set(n);
        let mut spare = (0..n).filter(|&c| !used.contains(c));
        // A path on k <= n - 1 vertices uses k - 1 <= n - 2 colors.
        let (c, c_prime) = match (spare.next(), spare.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => break,
        };
        let Some(cycle) = close_rainbow_cycle(sys, &path, c, c_prime)? else {
            break;
        };
        match reopen_cycle(sys, &cycle) {
            Some(longer) => path = longer,
            None => break,
        }
    }
    Err(HamPathError::Stuck { longest: path, n })
}

/// Whether every color class meets `δ(G_i) ≥ ⌈(n - 1) / 2⌉`.
pub fn meets_path_threshold(sys: &GraphSystem) -> bool {
    let need = sys.n().saturating_sub(1).div_ceil(2);
    sys.min_degree().is_some_and(|d| d >= need)
}
