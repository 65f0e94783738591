//! Rainbow path and cycle certificates, and the verifier every solver's
//! output is checked against.

use std::fmt;

use crate::bitset::BitSet;
use crate::system::{Color, GraphSystem, Vertex};

/// `vertices[k]` and `vertices[k + 1]` are joined in color `colors[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RainbowPath {
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Color>,
}

/// `colors[k]` colors the edge `vertices[k] -> vertices[(k + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RainbowCycle {
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Color>,
}

impl RainbowPath {
    pub fn single(v: Vertex) -> Self {
        RainbowPath {
            vertices: vec![v],
            colors: Vec::new(),
        }
    }

    /// Number of vertices (the path's order).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("empty path")
    }

    pub fn reversed(&self) -> RainbowPath {
        RainbowPath {
            vertices: self.vertices.iter().rev().copied().collect(),
            colors: self.colors.iter().rev().copied().collect(),
        }
    }

    pub fn vertex_set(&self, n: usize) -> BitSet {
        BitSet::from_ids(n, self.vertices.iter().copied())
    }

    pub fn color_set(&self, colors: usize) -> BitSet {
        BitSet::from_ids(colors, self.colors.iter().copied())
    }
}

impl RainbowCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `v_i` with the cyclic convention `v_i = v_{i - len}`.
    pub fn at(&self, i: usize) -> Vertex {
        self.vertices[i % self.vertices.len()]
    }

    pub fn vertex_set(&self, n: usize) -> BitSet {
        BitSet::from_ids(n, self.vertices.iter().copied())
    }

    pub fn color_set(&self, colors: usize) -> BitSet {
        BitSet::from_ids(colors, self.colors.iter().copied())
    }

    /// The same cycle, starting at position `start`.
    pub fn rotated(&self, start: usize) -> RainbowCycle {
        let len = self.len();
        RainbowCycle {
            vertices: (0..len).map(|k| self.vertices[(start + k) % len]).collect(),
            colors: (0..len).map(|k| self.colors[(start + k) % len]).collect(),
        }
    }

    /// The same cycle traversed in the opposite direction from the same
    /// starting vertex.
    pub fn reversed(&self) -> RainbowCycle {
        let len = self.len();
        let vertices = (0..len).map(|k| self.vertices[(len - k) % len]).collect();
        let colors = (0..len).map(|k| self.colors[(2 * len - k - 1) % len]).collect();
        RainbowCycle { vertices, colors }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    Path(RainbowPath),
    Cycle(RainbowCycle),
}

impl Certificate {
    pub fn verify(&self, sys: &GraphSystem) -> Verdict {
        match self {
            Certificate::Path(p) => verify_rainbow_path(sys, p),
            Certificate::Cycle(c) => verify_rainbow_cycle(sys, c),
        }
    }
}

impl From<RainbowPath> for Certificate {
    fn from(p: RainbowPath) -> Self {
        Certificate::Path(p)
    }
}

impl From<RainbowCycle> for Certificate {
    fn from(c: RainbowCycle) -> Self {
        Certificate::Cycle(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    TooShort { len: usize },
    LengthMismatch { vertices: usize, colors: usize },
    VertexOutOfRange { index: usize, vertex: Vertex },
    DuplicateVertex { index: usize, vertex: Vertex },
    ColorOutOfRange { index: usize, color: Color },
    DuplicateColor { index: usize, color: Color },
    MissingEdge { index: usize, color: Color, from: Vertex, to: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty certificate"),
            Violation::TooShort { len } => write!(f, "cycle of length {len} is too short"),
            Violation::LengthMismatch { vertices, colors } => {
                write!(f, "color count mismatch: {vertices} vertices, {colors} colors")
            }
            Violation::VertexOutOfRange { index, vertex } => {
                write!(f, "vertex {vertex} out of range at index {index}")
            }
            Violation::DuplicateVertex { index, vertex } => {
                write!(f, "duplicate vertex {vertex} at index {index}")
            }
            Violation::ColorOutOfRange { index, color } => {
                write!(f, "color {color} out of range at index {index}")
            }
            Violation::DuplicateColor { index, color } => {
                write!(f, "duplicate color {color} at index {index}")
            }
            Violation::MissingEdge { index, color, from, to } => write!(
                f,
                "missing edge at index {index} ({from}-{to} in color {color})"
            ),
        }
    }
}

/// Verifier output. Only the first violation is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    violation: Option<Violation>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { violation: None }
    }

    pub fn fail(v: Violation) -> Self {
        Verdict { violation: Some(v) }
    }

    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&Violation> {
        self.violation.as_ref()
    }

    pub fn into_result(self) -> Result<(), Violation> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "ok"),
            Some(v) => write!(f, "violation: {v}"),
        }
    }
}

pub fn verify_rainbow_path(sys: &GraphSystem, path: &RainbowPath) -> Verdict {
    let k = path.vertices.len();
    if k == 0 {
        return Verdict::fail(Violation::Empty);
    }
    if path.colors.len() != k - 1 {
        return Verdict::fail(Violation::LengthMismatch {
            vertices: k,
            colors: path.colors.len(),
        });
    }
    check_walk(sys, &path.vertices, &path.colors, false)
}

pub fn verify_rainbow_cycle(sys: &GraphSystem, cycle: &RainbowCycle) -> Verdict {
    let k = cycle.vertices.len();
    if k == 0 {
        return Verdict::fail(Violation::Empty);
    }
    if k < 3 {
        return Verdict::fail(Violation::TooShort { len: k });
    }
    if cycle.colors.len() != k {
        return Verdict::fail(Violation::LengthMismatch {
            vertices: k,
            colors: cycle.colors.len(),
        });
    }
    check_walk(sys, &cycle.vertices, &cycle.colors, true)
}

fn check_walk(sys: &GraphSystem, vertices: &[Vertex], colors: &[Color], closed: bool) -> Verdict {
    let mut seen = BitSet::new(sys.n());
    for (index, &vertex) in vertices.iter().enumerate() {
        if vertex >= sys.n() {
            return Verdict::fail(Violation::VertexOutOfRange { index, vertex });
        }
        if !seen.insert(vertex) {
            return Verdict::fail(Violation::DuplicateVertex { index, vertex });
        }
    }
    let mut used = BitSet::new(sys.color_count());
    let k = vertices.len();
    for (index, &color) in colors.iter().enumerate() {
        if color >= sys.color_count() {
            return Verdict::fail(Violation::ColorOutOfRange { index, color });
        }
        if !used.insert(color) {
            return Verdict::fail(Violation::DuplicateColor { index, color });
        }
        let from = vertices[index];
        let to = if closed { vertices[(index + 1) % k] } else { vertices[index + 1] };
        if !sys.adjacent(color, from, to) {
            return Verdict::fail(Violation::MissingEdge { index, color, from, to });
        }
    }
    Verdict::pass()
}
