//! Rainbow cycles of every length `3..=n-1` when every color class has
//! minimum degree at least `⌈(n + 1) / 2⌉`.
//!
//! The `n - 1` cycle comes from closing the first `n - 1` vertices of a
//! rainbow Hamiltonian path. Every shorter length is cut out of a base cycle
//! `C` of length `n - 2` or `n - 3` using chords to the vertices outside `C`
//! in colors `C` does not use:
//!
//! * one outside vertex `x`: `x w_j w_{j+1} .. w_{j+len-2} x`;
//! * two outside vertices `a, b`: `b a w_j .. w_{j+len-3} b`.
//!
//! Positions on `C` are taken cyclically.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::certificate::{verify_rainbow_cycle, RainbowCycle, RainbowPath, Violation};
use crate::exec::Exec;
use crate::ham_path::{find_rainbow_hamiltonian_path, HamPathError};
use crate::oracle::{oracle_cycle_of_length, DEFAULT_CYCLE_CAP};
use crate::rotation::{close_rainbow_cycle, RotationError};
use crate::system::{Color, GraphSystem, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PancyclicError {
    #[error("system is not square: {colors} colors on {n} vertices")]
    NotSquare { n: usize, colors: usize },
    #[error("n = {n} is too small, need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("minimum color degree {min_degree} is below the required {need}")]
    BelowThreshold { min_degree: usize, need: usize },
    #[error("base is not a rainbow cycle: {0}")]
    InvalidBase(Violation),
    #[error("target length {len} outside 3..={max}")]
    BadLength { len: usize, max: usize },
    #[error("base cycle leaves {0} colors unused, need at least 2")]
    TooFewSpareColors(usize),
    #[error("no rainbow cycle of length {len} found")]
    NotFound { len: usize },
    #[error("lengths {missing:?} not realized")]
    Unrealized {
        found: BTreeMap<usize, RainbowCycle>,
        missing: Vec<usize>,
    },
    #[error("construction step failed unexpectedly: {0}")]
    Internal(String),
    #[error(transparent)]
    HamPath(#[from] HamPathError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

/// `⌈(n + 1) / 2⌉`.
pub fn pancyclic_threshold(n: usize) -> usize {
    (n + 2) / 2
}

fn check_hypothesis(sys: &GraphSystem, min_n: usize) -> Result<(), PancyclicError> {
    let n = sys.n();
    if !sys.is_square() {
        return Err(PancyclicError::NotSquare { n, colors: sys.color_count() });
    }
    if n < min_n {
        return Err(PancyclicError::TooSmall { n, min: min_n });
    }
    let need = pancyclic_threshold(n);
    let min_degree = sys.min_degree().unwrap_or(0);
    if min_degree < need {
        return Err(PancyclicError::BelowThreshold { min_degree, need });
    }
    Ok(())
}

fn prefix(path: &RainbowPath, order: usize) -> RainbowPath {
    RainbowPath {
        vertices: path.vertices[..order].to_vec(),
        colors: path.colors[..order - 1].to_vec(),
    }
}

/// Rainbow cycle on `n - 1` vertices: drop the last vertex of a rainbow
/// Hamiltonian path and close the rest with the dropped edge's color at the
/// first vertex and the path's missing color at the new last vertex.
pub fn find_cycle_n_minus_1(sys: &GraphSystem) -> Result<RainbowCycle, PancyclicError> {
    check_hypothesis(sys, 4)?;
    let n = sys.n();
    let ham = find_rainbow_hamiltonian_path(sys)?;
    let dropped = ham.colors[n - 2];
    let used = ham.color_set(n);
    let missing = (0..n)
        .find(|&c| !used.contains(c))
        .expect("a Hamiltonian path leaves one color unused");
    let sub = prefix(&ham, n - 1);
    close_rainbow_cycle(sys, &sub, dropped, missing)?
        .ok_or_else(|| PancyclicError::Internal(format!("closing {sub:?} failed")))
}

/// Rainbow cycle of length `n - 2` or `n - 3`: take the first `n - 3`
/// vertices of a rainbow Hamiltonian path, look for an outside vertex joining
/// both ends in two of the four spare colors, and otherwise close the prefix
/// itself.
pub fn find_base_cycle(sys: &GraphSystem) -> Result<RainbowCycle, PancyclicError> {
    check_hypothesis(sys, 5)?;
    let n = sys.n();
    let ham = find_rainbow_hamiltonian_path(sys)?;
    let short = prefix(&ham, n - 3);
    let on_path = short.vertex_set(n);
    let used = short.color_set(n);
    let spare: Vec<Color> = (0..n).filter(|&c| !used.contains(c)).collect();
    let (head, tail) = (short.first(), short.last());

    for &c in &spare {
        for &c_prime in spare.iter().filter(|&&d| d != c) {
            let joined = (0..n)
                .filter(|&x| !on_path.contains(x))
                .find(|&x| sys.adjacent(c, head, x) && sys.adjacent(c_prime, tail, x));
            if let Some(x) = joined {
                let mut cycle = RainbowCycle {
                    vertices: short.vertices.clone(),
                    colors: short.colors.clone(),
                };
                cycle.vertices.push(x);
                cycle.colors.push(c_prime);
                cycle.colors.push(c);
                return Ok(cycle);
            }
        }
    }
    if short.len() < 3 {
        return Err(PancyclicError::Internal(format!(
            "no outside vertex closes {short:?} and it is too short to close alone"
        )));
    }
    close_rainbow_cycle(sys, &short, spare[0], spare[1])?
        .ok_or_else(|| PancyclicError::Internal(format!("closing {short:?} failed")))
}

/// Which search produced a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// The base cycle itself, or the closed `n - 1` path.
    Base,
    OneOutside,
    TwoOutside,
    /// Exhaustive search; only reachable at small `n`.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundCycle {
    pub cycle: RainbowCycle,
    pub pattern: Pattern,
}

/// `x w_j .. w_{j+len-2} x` with `x w_j` in color `c` and the closing chord in
/// `c_prime`, for the smallest working `j`.
pub fn one_outside_cycle(
    sys: &GraphSystem,
    base: &RainbowCycle,
    x: Vertex,
    c: Color,
    c_prime: Color,
    len: usize,
) -> Option<RainbowCycle> {
    let p = base.len();
    if len < 3 || len > p + 1 {
        return None;
    }
    (0..p)
        .find(|&j| sys.adjacent(c, x, base.at(j)) && sys.adjacent(c_prime, base.at(j + len - 2), x))
        .map(|j| {
            let mut vertices = vec![x];
            let mut colors = vec![c];
            vertices.extend((0..len - 1).map(|k| base.at(j + k)));
            colors.extend((0..len - 2).map(|k| base.colors[(j + k) % p]));
            colors.push(c_prime);
            RainbowCycle { vertices, colors }
        })
}

/// `b a w_j .. w_{j+len-3} b` with `ba`, `a w_j` and the closing chord in
/// `colors.0`, `colors.1` and `colors.2`.
pub fn two_outside_cycle(
    sys: &GraphSystem,
    base: &RainbowCycle,
    a: Vertex,
    b: Vertex,
    colors: (Color, Color, Color),
    len: usize,
) -> Option<RainbowCycle> {
    let p = base.len();
    if len < 3 || len > p + 2 || !sys.adjacent(colors.0, a, b) {
        return None;
    }
    (0..p)
        .find(|&j| sys.adjacent(colors.1, a, base.at(j)) && sys.adjacent(colors.2, base.at(j + len - 3), b))
        .map(|j| {
            let mut vertices = vec![b, a];
            let mut cs = vec![colors.0, colors.1];
            vertices.extend((0..len - 2).map(|k| base.at(j + k)));
            cs.extend((0..len - 3).map(|k| base.colors[(j + k) % p]));
            cs.push(colors.2);
            RainbowCycle { vertices, colors: cs }
        })
}

/// Rainbow cycle of length `len` built from `base` and its outside vertices.
///
/// Searches one-outside-vertex chords, then two-outside-vertex chords
/// (outside vertices, colors and `j` ascending). Below the degree hypothesis
/// both can come up empty; for `n ≤ 12` an exhaustive search then runs and
/// logs a warning.
pub fn find_cycle_of_length(
    sys: &GraphSystem,
    base: &RainbowCycle,
    len: usize,
) -> Result<FoundCycle, PancyclicError> {
    verify_rainbow_cycle(sys, base)
        .into_result()
        .map_err(PancyclicError::InvalidBase)?;
    let p = base.len();
    let max = (p + 1).min(sys.n());
    if len < 3 || len > max {
        return Err(PancyclicError::BadLength { len, max });
    }
    if len == p {
        return Ok(FoundCycle { cycle: base.clone(), pattern: Pattern::Base });
    }
    let used = base.color_set(sys.color_count());
    let spare: Vec<Color> = (0..sys.color_count()).filter(|&c| !used.contains(c)).collect();
    if spare.len() < 2 {
        return Err(PancyclicError::TooFewSpareColors(spare.len()));
    }
    let on_base = base.vertex_set(sys.n());
    let outside: Vec<Vertex> = (0..sys.n()).filter(|&v| !on_base.contains(v)).collect();

    for &x in &outside {
        for &c in &spare {
            for &c_prime in spare.iter().filter(|&&d| d != c) {
                if let Some(cycle) = one_outside_cycle(sys, base, x, c, c_prime, len) {
                    return Ok(FoundCycle { cycle, pattern: Pattern::OneOutside });
                }
            }
        }
    }

    for &a in &outside {
        for &b in outside.iter().filter(|&&b| b != a) {
            for &t0 in &spare {
                for &t1 in spare.iter().filter(|&&t| t != t0) {
                    for &t2 in spare.iter().filter(|&&t| t != t0 && t != t1) {
                        if let Some(cycle) = two_outside_cycle(sys, base, a, b, (t0, t1, t2), len) {
                            return Ok(FoundCycle { cycle, pattern: Pattern::TwoOutside });
                        }
                    }
                }
            }
        }
    }

    if sys.n() <= DEFAULT_CYCLE_CAP {
        log::warn!(
            "chord patterns found no rainbow {len}-cycle around a {p}-cycle (n = {}); running exhaustive search",
            sys.n()
        );
        if let Ok(Some(cycle)) = oracle_cycle_of_length(sys, len) {
            return Ok(FoundCycle { cycle, pattern: Pattern::Fallback });
        }
    }
    Err(PancyclicError::NotFound { len })
}

/// The sets of the one-outside-vertex argument for `(x, c, c', len)`:
/// `S1 = { w_{j+len-2} : w_j ∈ N_c(x, V(C)) }` and `S2 = N_{c'}(x, V(C))`.
/// If no one-outside cycle exists for these parameters the two sets are
/// disjoint, so they partition `V(C)` whenever their sizes add up to `|C|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub x: Vertex,
    pub c: Color,
    pub c_prime: Color,
    pub len: usize,
    pub s1: BitSet,
    pub s2: BitSet,
}

impl PartitionWitness {
    pub fn compute(sys: &GraphSystem, base: &RainbowCycle, x: Vertex, c: Color, c_prime: Color, len: usize) -> Self {
        let p = base.len();
        let mut s1 = BitSet::new(sys.n());
        let mut s2 = BitSet::new(sys.n());
        for j in 0..p {
            if sys.adjacent(c, x, base.at(j)) {
                s1.insert(base.at(j + len - 2));
            }
            if sys.adjacent(c_prime, x, base.at(j)) {
                s2.insert(base.at(j));
            }
        }
        PartitionWitness { x, c, c_prime, len, s1, s2 }
    }

    pub fn degree_sum(&self) -> usize {
        self.s1.len() + self.s2.len()
    }

    pub fn is_disjoint(&self) -> bool {
        self.s1.is_disjoint(&self.s2)
    }

    /// `S1 ∩ S2 = ∅` and `|S1| + |S2| = p`.
    pub fn is_partition_of(&self, base: &RainbowCycle) -> bool {
        self.is_disjoint() && self.degree_sum() == base.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PancyclicReport {
    pub cycles: BTreeMap<usize, RainbowCycle>,
    pub patterns: BTreeMap<usize, Pattern>,
    /// Length of the base cycle, when one was needed.
    pub base_len: Option<usize>,
}

impl PancyclicReport {
    pub fn fallback_count(&self) -> usize {
        self.patterns.values().filter(|&&p| p == Pattern::Fallback).count()
    }
}

/// A verified rainbow cycle for every length `3..=n-1`.
pub fn rainbow_pancyclic(sys: &GraphSystem) -> Result<PancyclicReport, PancyclicError> {
    rainbow_pancyclic_with(sys, Exec::preferred())
}

pub fn rainbow_pancyclic_with(sys: &GraphSystem, exec: Exec) -> Result<PancyclicReport, PancyclicError> {
    check_hypothesis(sys, 4)?;
    let n = sys.n();
    let mut cycles = BTreeMap::new();
    let mut patterns = BTreeMap::new();
    cycles.insert(n - 1, find_cycle_n_minus_1(sys)?);
    patterns.insert(n - 1, Pattern::Base);

    let mut base_len = None;
    let mut missing = Vec::new();
    if n >= 5 {
        let base = find_base_cycle(sys)?;
        base_len = Some(base.len());
        let lengths: Vec<usize> = (3..=n - 2).collect();
        let found = exec.map(lengths.clone(), |len| find_cycle_of_length(sys, &base, len));
        for (len, result) in lengths.into_iter().zip(found) {
            match result {
                Ok(f) => {
                    cycles.insert(len, f.cycle);
                    patterns.insert(len, f.pattern);
                }
                Err(PancyclicError::NotFound { .. }) => missing.push(len),
                Err(e) => return Err(e),
            }
        }
    }
    if !missing.is_empty() {
        return Err(PancyclicError::Unrealized { found: cycles, missing });
    }
    Ok(PancyclicReport { cycles, patterns, base_len })
}
