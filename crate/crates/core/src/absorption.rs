//! Absorbing cycles and the rainbow Hamiltonian cycle pipeline.
//!
//! An absorbing cycle strings together vertex-disjoint pattern paths
//! `v1 v2 v3 v4`, one per color group `(3i, 3i+1, 3i+2)`, joined through
//! connector vertices. A pattern path absorbs an external rainbow path
//! `x1 .. x2` with a fresh color `s` when `x1 v2` has color `s` and `x2 v3` has
//! the middle color: the middle edge `v2 v3` is then replaced by
//! `v2 x1 .. x2 v3`.
//!
//! The Hamiltonian pipeline builds such a cycle, finds a rainbow Hamiltonian
//! path on the remaining vertices with the remaining colors, and absorbs it.

use rand::seq::IndexedRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::certificate::{verify_rainbow_cycle, verify_rainbow_path, RainbowCycle, RainbowPath, Violation};
use crate::exec::Exec;
use crate::ham_path::find_rainbow_hamiltonian_path;
use crate::system::{Color, GraphSystem, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbsorptionError {
    #[error("system is not square: {colors} colors on {n} vertices")]
    NotSquare { n: usize, colors: usize },
    #[error("ell = {0} must be a positive multiple of 3")]
    BadEll(usize),
    #[error("ell = {ell} leaves no room on {n} vertices (need 10 * ell <= 3 * n)")]
    NoRoom { ell: usize, n: usize },
    #[error("color {color} out of range ({colors} colors)")]
    ColorOutOfRange { color: Color, colors: usize },
    #[error("no pattern path for colors {triple:?} after {retries} samples")]
    Exhausted { triple: ColorTriple, retries: usize },
    #[error("no connector after pattern path {index}")]
    NoConnector { index: usize },
    #[error("absorbing cycle construction failed {attempts} times, last: {last}")]
    BuildFailure { attempts: usize, last: Box<AbsorptionError> },
    #[error("path is not rainbow: {0}")]
    InvalidPath(Violation),
    #[error("path is empty")]
    EmptyPath,
    #[error("vertex {0} lies on both the path and the cycle")]
    SharedVertex(Vertex),
    #[error("color {0} is used twice among the path, the cycle and s")]
    SharedColor(Color),
    #[error("no pattern path absorbs ({x1}, {x2}) with color {s}")]
    NoAbsorber { x1: Vertex, x2: Vertex, s: Color },
    #[error("absorbing cycle leaves no vertices outside")]
    NothingLeft,
    #[error("no rainbow Hamiltonian cycle after {attempts} attempts")]
    Failure { attempts: usize },
}

/// Colors `(3i, 3i + 1, 3i + 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorTriple(pub Color, pub Color, pub Color);

impl ColorTriple {
    pub fn group(i: usize) -> Self {
        ColorTriple(3 * i, 3 * i + 1, 3 * i + 2)
    }

    pub fn colors(self) -> [Color; 3] {
        [self.0, self.1, self.2]
    }
}

/// `v1 v2 v3 v4` with edges colored `triple.0`, `triple.1`, `triple.2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternPath {
    pub vertices: [Vertex; 4],
    pub triple: ColorTriple,
}

impl PatternPath {
    pub fn v1(&self) -> Vertex {
        self.vertices[0]
    }
    pub fn v2(&self) -> Vertex {
        self.vertices[1]
    }
    pub fn v3(&self) -> Vertex {
        self.vertices[2]
    }
    pub fn v4(&self) -> Vertex {
        self.vertices[3]
    }

    pub fn is_valid(&self, sys: &GraphSystem) -> bool {
        let [a, b, c, d] = self.vertices;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && self.vertices.iter().all(|&v| v < sys.n())
            && self.triple.colors().iter().all(|&t| t < sys.color_count())
            && sys.adjacent(self.triple.0, a, b)
            && sys.adjacent(self.triple.1, b, c)
            && sys.adjacent(self.triple.2, c, d)
    }

    fn intersects(&self, other: &PatternPath) -> bool {
        self.vertices.iter().any(|v| other.vertices.contains(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbsorptionParams {
    /// Number of pattern colors; a multiple of 3.
    pub ell: usize,
    pub build_retries: usize,
    /// Rejection budget per pattern path.
    pub sample_retries: usize,
    /// Sample each pattern path away from the ones already drawn instead of
    /// drawing all of them independently and discarding overlaps.
    pub disjoint_sampling: bool,
}

impl AbsorptionParams {
    /// `ell = 6` below 100 vertices, `3 * ceil(n / 50)` from there, clamped to
    /// the largest value that fits. `None` when no `ell` fits (`n < 10`).
    pub fn default_for(n: usize) -> Option<Self> {
        let wanted = if n < 100 { 6 } else { 3 * n.div_ceil(50) };
        let ell = wanted.min(max_ell(n));
        (ell >= 3).then_some(AbsorptionParams {
            ell,
            build_retries: 20,
            sample_retries: 50 * n,
            disjoint_sampling: false,
        })
    }

    pub fn validate(&self, n: usize) -> Result<(), AbsorptionError> {
        if self.ell < 3 || !self.ell.is_multiple_of(3) {
            return Err(AbsorptionError::BadEll(self.ell));
        }
        if 10 * self.ell > 3 * n || self.ell > n {
            return Err(AbsorptionError::NoRoom { ell: self.ell, n });
        }
        Ok(())
    }

    pub fn groups(&self) -> usize {
        self.ell / 3
    }
}

/// Largest multiple of 3 with `5 * ell / 3 <= n / 2`.
pub fn max_ell(n: usize) -> usize {
    3 * (n / 10)
}

/// A rainbow cycle laid out as `[P_1, u_1, P_2, u_2, ..]`, each `P_i` a pattern
/// path followed by its connector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorbingCycle {
    pub cycle: RainbowCycle,
    pub pattern_paths: Vec<PatternPath>,
    pub connectors: Vec<Vertex>,
}

impl AbsorbingCycle {
    /// Checks the layout invariants; the message names the first failure.
    pub fn check_invariants(&self, sys: &GraphSystem) -> Result<(), String> {
        if let Some(v) = verify_rainbow_cycle(sys, &self.cycle).violation() {
            return Err(format!("cycle does not verify: {v}"));
        }
        let t = self.pattern_paths.len();
        if t == 0 || self.connectors.len() != t {
            return Err(format!("{t} pattern paths but {} connectors", self.connectors.len()));
        }
        if self.cycle.len() != 5 * t {
            return Err(format!("cycle length {} != 5 * {t}", self.cycle.len()));
        }
        for (i, (p, &u)) in self.pattern_paths.iter().zip(&self.connectors).enumerate() {
            if !p.is_valid(sys) {
                return Err(format!("pattern path {i} is not valid"));
            }
            if self.cycle.vertices[5 * i..5 * i + 4] != p.vertices {
                return Err(format!("pattern path {i} is not embedded at position {}", 5 * i));
            }
            if self.cycle.colors[5 * i..5 * i + 3] != p.triple.colors() {
                return Err(format!("pattern path {i} colors differ on the cycle"));
            }
            if self.cycle.vertices[5 * i + 4] != u {
                return Err(format!("connector {i} is not at position {}", 5 * i + 4));
            }
        }
        // Disjointness and the partition follow from the cycle verifying with
        // exactly 5t vertices laid out as above.
        Ok(())
    }

    /// Colors unused on the cycle.
    pub fn free_colors(&self, colors: usize) -> Vec<Color> {
        let used = self.cycle.color_set(colors);
        (0..colors).filter(|&c| !used.contains(c)).collect()
    }
}

/// Rejection-samples a pattern path for `triple` avoiding `forbidden`:
/// `v2` uniform, then `v1`, `v3`, `v4` uniform among the matching
/// neighbours.
pub fn sample_pattern_path<R: Rng + ?Sized>(
    sys: &GraphSystem,
    triple: ColorTriple,
    forbidden: &BitSet,
    sample_retries: usize,
    rng: &mut R,
) -> Result<PatternPath, AbsorptionError> {
    for color in triple.colors() {
        if color >= sys.color_count() {
            return Err(AbsorptionError::ColorOutOfRange { color, colors: sys.color_count() });
        }
    }
    let n = sys.n();
    let pick = |rng: &mut R, c: Color, v: Vertex| -> Option<Vertex> {
        let options: Vec<Vertex> = sys.neighbors(c, v).collect();
        options.choose(rng).copied()
    };
    for _ in 0..sample_retries {
        if n == 0 {
            break;
        }
        let v2 = rng.random_range(0..n);
        let Some(v1) = pick(rng, triple.0, v2) else { continue };
        let Some(v3) = pick(rng, triple.1, v2) else { continue };
        let Some(v4) = pick(rng, triple.2, v3) else { continue };
        let p = PatternPath { vertices: [v1, v2, v3, v4], triple };
        let distinct = v1 != v3 && v1 != v4 && v2 != v4;
        if distinct && p.vertices.iter().all(|&v| !forbidden.contains(v)) {
            return Ok(p);
        }
    }
    Err(AbsorptionError::Exhausted { triple, retries: sample_retries })
}

/// `s ∈ Col(x1 v2)` and the middle color `∈ Col(x2 v3)`.
///
/// # Panics
/// If `x1` or `x2` lies on `p`, or `s` is one of `p`'s colors.
pub fn is_absorbing_for(sys: &GraphSystem, p: &PatternPath, x1: Vertex, x2: Vertex, s: Color) -> bool {
    assert!(
        !p.vertices.contains(&x1) && !p.vertices.contains(&x2),
        "({x1}, {x2}) meets pattern path {:?}",
        p.vertices
    );
    assert!(!p.triple.colors().contains(&s), "s = {s} is a pattern color");
    sys.adjacent(s, x1, p.v2()) && sys.adjacent(p.triple.1, x2, p.v3())
}

/// Builds an absorbing cycle, retrying whole attempts up to
/// `params.build_retries` times.
pub fn build_absorbing_cycle<R: Rng + ?Sized>(
    sys: &GraphSystem,
    params: &AbsorptionParams,
    rng: &mut R,
) -> Result<AbsorbingCycle, AbsorptionError> {
    if !sys.is_square() {
        return Err(AbsorptionError::NotSquare { n: sys.n(), colors: sys.color_count() });
    }
    params.validate(sys.n())?;
    let mut last = None;
    for _ in 0..params.build_retries {
        match build_once(sys, params, rng) {
            Ok(ac) => return Ok(ac),
            Err(e) => last = Some(e),
        }
    }
    Err(AbsorptionError::BuildFailure {
        attempts: params.build_retries,
        last: Box::new(last.unwrap_or(AbsorptionError::Failure { attempts: 0 })),
    })
}

fn build_once<R: Rng + ?Sized>(
    sys: &GraphSystem,
    params: &AbsorptionParams,
    rng: &mut R,
) -> Result<AbsorbingCycle, AbsorptionError> {
    let n = sys.n();
    let mut forbidden = BitSet::new(n);
    let mut sampled = Vec::with_capacity(params.groups());
    for i in 0..params.groups() {
        let p = sample_pattern_path(sys, ColorTriple::group(i), &forbidden, params.sample_retries, rng)?;
        if params.disjoint_sampling {
            p.vertices.iter().for_each(|&v| {
                forbidden.insert(v);
            });
        }
        sampled.push(p);
    }
    let mut kept: Vec<PatternPath> = Vec::new();
    for p in sampled {
        if kept.iter().all(|q| !q.intersects(&p)) {
            kept.push(p);
        }
    }

    let mut taken = BitSet::new(n);
    let mut used_colors = BitSet::new(n);
    for p in &kept {
        p.vertices.iter().for_each(|&v| {
            taken.insert(v);
        });
        p.triple.colors().iter().for_each(|&c| {
            used_colors.insert(c);
        });
    }

    let t = kept.len();
    let mut vertices = Vec::with_capacity(5 * t);
    let mut colors = Vec::with_capacity(5 * t);
    let mut connectors = Vec::with_capacity(t);
    for i in 0..t {
        let (from, to) = (kept[i].v4(), kept[(i + 1) % t].v1());
        let (u, a, b) = find_connector(sys, from, to, &taken, &used_colors).ok_or(AbsorptionError::NoConnector { index: i })?;
        taken.insert(u);
        used_colors.insert(a);
        used_colors.insert(b);
        vertices.extend_from_slice(&kept[i].vertices);
        vertices.push(u);
        colors.extend_from_slice(&kept[i].triple.colors());
        colors.push(a);
        colors.push(b);
        connectors.push(u);
    }
    let ac = AbsorbingCycle { cycle: RainbowCycle { vertices, colors }, pattern_paths: kept, connectors };
    debug_assert_eq!(ac.check_invariants(sys), Ok(()));
    Ok(ac)
}

/// Ordered pairs of free colors in lexicographic order, starting with the
/// two smallest; for each pair the smallest free vertex joining `from` in the
/// first color and `to` in the second.
fn find_connector(
    sys: &GraphSystem,
    from: Vertex,
    to: Vertex,
    taken: &BitSet,
    used_colors: &BitSet,
) -> Option<(Vertex, Color, Color)> {
    let free: Vec<Color> = (0..sys.color_count()).filter(|&c| !used_colors.contains(c)).collect();
    for &a in &free {
        for &b in free.iter().filter(|&&b| b != a) {
            let u = sys
                .neighbors(a, from)
                .find(|&u| !taken.contains(u) && u != to && sys.adjacent(b, u, to));
            if let Some(u) = u {
                return Some((u, a, b));
            }
        }
    }
    None
}

/// Where [`absorb_at`] spliced the path in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Absorption {
    pub cycle: RainbowCycle,
    /// Position `a` of the replaced edge `C[a] C[a + 1]`.
    pub edge: usize,
    /// Index of the absorbing pattern path, `None` for another cycle edge.
    pub pattern: Option<usize>,
}

/// Splices `p` into `ac` and returns the new cycle. See [`absorb_at`].
pub fn absorb(
    sys: &GraphSystem,
    ac: &AbsorbingCycle,
    p: &RainbowPath,
    s: Color,
) -> Result<RainbowCycle, AbsorptionError> {
    absorb_at(sys, ac, p, s).map(|a| a.cycle)
}

/// Splices `p` into `ac` at the first pattern path (cycle order) that absorbs
/// it, trying `p` as given and then reversed. If none does, any other cycle
/// edge `w_a w_{a+1}` of color `e` with `s ∈ Col(x1 w_a)` and
/// `e ∈ Col(x2 w_{a+1})` is used the same way, lowest `a` first.
///
/// The result starts at `w_{a+1}`, runs around the old cycle to `w_a`, then
/// through `p`.
pub fn absorb_at(
    sys: &GraphSystem,
    ac: &AbsorbingCycle,
    p: &RainbowPath,
    s: Color,
) -> Result<Absorption, AbsorptionError> {
    if p.is_empty() {
        return Err(AbsorptionError::EmptyPath);
    }
    verify_rainbow_path(sys, p).into_result().map_err(AbsorptionError::InvalidPath)?;
    if s >= sys.color_count() {
        return Err(AbsorptionError::ColorOutOfRange { color: s, colors: sys.color_count() });
    }
    let on_cycle = ac.cycle.vertex_set(sys.n());
    if let Some(&v) = p.vertices.iter().find(|&&v| on_cycle.contains(v)) {
        return Err(AbsorptionError::SharedVertex(v));
    }
    let cycle_colors = ac.cycle.color_set(sys.color_count());
    if let Some(&c) = p.colors.iter().find(|&&c| cycle_colors.contains(c)) {
        return Err(AbsorptionError::SharedColor(c));
    }
    if cycle_colors.contains(s) || p.colors.contains(&s) {
        return Err(AbsorptionError::SharedColor(s));
    }

    let both = [p.clone(), p.reversed()];
    for (i, q) in ac.pattern_paths.iter().enumerate() {
        if let Some(path) = both.iter().find(|path| is_absorbing_for(sys, q, path.first(), path.last(), s)) {
            // v2 sits at 5i + 1.
            let edge = 5 * i + 1;
            return Ok(Absorption { cycle: splice(&ac.cycle, edge, path, s), edge, pattern: Some(i) });
        }
    }
    let k = ac.cycle.len();
    for edge in (0..k).filter(|a| a % 5 != 1) {
        let (w, w_next, e) = (ac.cycle.at(edge), ac.cycle.at(edge + 1), ac.cycle.colors[edge]);
        if let Some(path) = both
            .iter()
            .find(|path| sys.adjacent(s, path.first(), w) && sys.adjacent(e, path.last(), w_next))
        {
            return Ok(Absorption { cycle: splice(&ac.cycle, edge, path, s), edge, pattern: None });
        }
    }
    Err(AbsorptionError::NoAbsorber { x1: p.first(), x2: p.last(), s })
}

fn splice(cycle: &RainbowCycle, edge: usize, path: &RainbowPath, s: Color) -> RainbowCycle {
    let k = cycle.len();
    let start = edge + 1;
    let mut vertices: Vec<Vertex> = (0..k).map(|j| cycle.at(start + j)).collect();
    let mut colors: Vec<Color> = (0..k - 1).map(|j| cycle.colors[(start + j) % k]).collect();
    colors.push(s);
    vertices.extend_from_slice(&path.vertices);
    colors.extend_from_slice(&path.colors);
    colors.push(cycle.colors[edge % k]);
    RainbowCycle { vertices, colors }
}

/// One pipeline attempt: absorbing cycle, Hamiltonian path on the rest with
/// the colors the cycle leaves free, then absorption with the leftover color.
pub fn hamiltonian_cycle_attempt<R: Rng + ?Sized>(
    sys: &GraphSystem,
    params: &AbsorptionParams,
    rng: &mut R,
) -> Result<RainbowCycle, AbsorptionError> {
    let single = AbsorptionParams { build_retries: 1, ..*params };
    let ac = build_absorbing_cycle(sys, &single, rng)?;
    let n = sys.n();
    let on_cycle = ac.cycle.vertex_set(n);
    let rest: Vec<Vertex> = (0..n).filter(|&v| !on_cycle.contains(v)).collect();
    let free = ac.free_colors(n);
    if rest.is_empty() {
        return Err(AbsorptionError::NothingLeft);
    }
    let sub = sys
        .induced_subsystem(&rest, &free)
        .expect("kept ids are in range and non-empty");
    let path = find_rainbow_hamiltonian_path(&sub.system).map_err(|_| AbsorptionError::Failure { attempts: 1 })?;
    let path = sub.lift_path(&path);
    let used = path.color_set(n);
    let s = free
        .iter()
        .copied()
        .find(|&c| !used.contains(c))
        .expect("a Hamiltonian path leaves one color free");
    absorb(sys, &ac, &path, s)
}

/// Rainbow Hamiltonian cycle via absorption. Draws one seed per attempt from
/// `rng` up front and returns the lowest-numbered successful attempt, so the
/// result depends only on `rng`'s state, not on `exec`.
pub fn find_rainbow_hamiltonian_cycle<R: RngCore + ?Sized>(
    sys: &GraphSystem,
    params: &AbsorptionParams,
    rng: &mut R,
) -> Result<RainbowCycle, AbsorptionError> {
    find_rainbow_hamiltonian_cycle_with(sys, params, rng, Exec::preferred())
}

/// [`find_rainbow_hamiltonian_cycle`] driven by a ChaCha8 generator seeded
/// with `seed`.
pub fn find_rainbow_hamiltonian_cycle_seeded(
    sys: &GraphSystem,
    params: &AbsorptionParams,
    seed: u64,
) -> Result<RainbowCycle, AbsorptionError> {
    find_rainbow_hamiltonian_cycle(sys, params, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn find_rainbow_hamiltonian_cycle_with<R: RngCore + ?Sized>(
    sys: &GraphSystem,
    params: &AbsorptionParams,
    rng: &mut R,
    exec: Exec,
) -> Result<RainbowCycle, AbsorptionError> {
    if !sys.is_square() {
        return Err(AbsorptionError::NotSquare { n: sys.n(), colors: sys.color_count() });
    }
    params.validate(sys.n())?;
    let seeds: Vec<u64> = (0..params.build_retries).map(|_| rng.next_u64()).collect();
    exec.find_first(seeds.len(), |i| {
        let mut attempt_rng = ChaCha8Rng::seed_from_u64(seeds[i]);
        let cycle = hamiltonian_cycle_attempt(sys, params, &mut attempt_rng).ok()?;
        verify_rainbow_cycle(sys, &cycle).is_ok().then_some(cycle)
    })
    .ok_or(AbsorptionError::Failure { attempts: params.build_retries })
}
