//! Graph systems: `k` simple graphs (color classes) on one shared vertex set,
//! viewed as a single edge-colored multigraph.

use thiserror::Error;

use crate::bitset::{count_common, words_for, BitSet, Ones};
use crate::certificate::{RainbowCycle, RainbowPath};

pub type Vertex = usize;
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: Vertex, n: usize },
    #[error("edge {index}: color {color} out of range for {colors} colors")]
    ColorOutOfRange { index: usize, color: Color, colors: usize },
    #[error("edge {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: Vertex },
    #[error("vertex {vertex} out of range for n = {n}")]
    BadVertex { vertex: Vertex, n: usize },
    #[error("color {color} out of range for {colors} colors")]
    BadColor { color: Color, colors: usize },
    #[error("no edges join a vertex to itself (vertex {0})")]
    SameVertex(Vertex),
    #[error("induced subsystem must keep at least one {0}")]
    EmptyKeep(&'static str),
}

/// An edge-colored multigraph on vertices `0..n` with color classes
/// `0..color_count`. Each color class is a simple undirected graph stored as
/// one symmetric bit matrix.
///
/// Immutable once built; cheap to share across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct GraphSystem {
    n: usize,
    colors: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for GraphSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GraphSystem")
            .field("n", &self.n)
            .field("colors", &self.colors)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl GraphSystem {
    /// Square system: `n` vertices and `n` colors. Edges are `(color, u, v)`
    /// triples; repeats are idempotent.
    pub fn build<I>(n: usize, edges: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (Color, Vertex, Vertex)>,
    {
        Self::with_colors(n, n, edges)
    }

    pub fn with_colors<I>(n: usize, colors: usize, edges: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (Color, Vertex, Vertex)>,
    {
        let mut sys = GraphSystem::empty(n, colors);
        for (index, (c, u, v)) in edges.into_iter().enumerate() {
            if c >= colors {
                return Err(SystemError::ColorOutOfRange { index, color: c, colors });
            }
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(SystemError::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(SystemError::SelfLoop { index, vertex: u });
            }
            sys.set(c, u, v);
        }
        Ok(sys)
    }

    pub fn empty(n: usize, colors: usize) -> Self {
        let stride = words_for(n);
        GraphSystem {
            n,
            colors,
            stride,
            rows: vec![0; stride * n * colors],
        }
    }

    fn set(&mut self, c: Color, u: Vertex, v: Vertex) {
        let (ru, rv) = (self.row_start(c, u), self.row_start(c, v));
        self.rows[ru + v / 64] |= 1 << (v % 64);
        self.rows[rv + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    fn row_start(&self, c: Color, v: Vertex) -> usize {
        (c * self.n + v) * self.stride
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> usize {
        self.colors
    }

    pub fn is_square(&self) -> bool {
        self.colors == self.n
    }

    pub fn check_vertex(&self, vertex: Vertex) -> Result<(), SystemError> {
        if vertex < self.n {
            Ok(())
        } else {
            Err(SystemError::BadVertex { vertex, n: self.n })
        }
    }

    pub fn check_color(&self, color: Color) -> Result<(), SystemError> {
        if color < self.colors {
            Ok(())
        } else {
            Err(SystemError::BadColor { color, colors: self.colors })
        }
    }

    /// Whether `u` and `v` are joined in color `c`. Out-of-range ids panic.
    #[inline]
    pub fn adjacent(&self, c: Color, u: Vertex, v: Vertex) -> bool {
        assert!(c < self.colors && u < self.n && v < self.n);
        self.rows[self.row_start(c, u) + v / 64] & (1 << (v % 64)) != 0
    }

    /// Raw bit row of `N_c(v)`.
    #[inline]
    pub fn neighbor_words(&self, c: Color, v: Vertex) -> &[u64] {
        assert!(c < self.colors && v < self.n);
        let start = self.row_start(c, v);
        &self.rows[start..start + self.stride]
    }

    /// `N_c(v)` in ascending order.
    pub fn neighbors(&self, c: Color, v: Vertex) -> Ones<'_> {
        Ones::new(self.neighbor_words(c, v))
    }

    pub fn neighbor_set(&self, c: Color, v: Vertex) -> BitSet {
        BitSet::from_ids(self.n, self.neighbors(c, v))
    }

    /// `d_c(v, S)`: neighbours of `v` in color `c` inside `within`, or the
    /// whole vertex set when `within` is `None`.
    pub fn color_degree(&self, c: Color, v: Vertex, within: Option<&BitSet>) -> usize {
        let row = self.neighbor_words(c, v);
        match within {
            None => row.iter().map(|w| w.count_ones() as usize).sum(),
            Some(set) => count_common(row, set.words()),
        }
    }

    /// `Col(u, v)`, ascending. Empty when `u` and `v` are not joined at all.
    pub fn colors_between(&self, u: Vertex, v: Vertex) -> Result<Vec<Color>, SystemError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(SystemError::SameVertex(u));
        }
        Ok((0..self.colors).filter(|&c| self.adjacent(c, u, v)).collect())
    }

    /// `δ(G_c)`.
    pub fn min_color_degree(&self, c: Color) -> usize {
        (0..self.n)
            .map(|v| self.color_degree(c, v, None))
            .min()
            .unwrap_or(0)
    }

    /// Minimum over all color classes of `δ(G_c)`; `None` for a system with no
    /// colors.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.colors).map(|c| self.min_color_degree(c)).min()
    }

    /// All edges as `(c, u, v)` with `u < v`, sorted by `(c, u, v)`.
    pub fn edges(&self) -> Vec<(Color, Vertex, Vertex)> {
        let mut out = Vec::new();
        for c in 0..self.colors {
            for u in 0..self.n {
                out.extend(self.neighbors(c, u).filter(|&v| v > u).map(|v| (c, u, v)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Restriction to `keep_vertices` and `keep_colors`, re-indexed densely in
    /// ascending order of the original ids.
    pub fn induced_subsystem(
        &self,
        keep_vertices: &[Vertex],
        keep_colors: &[Color],
    ) -> Result<Subsystem, SystemError> {
        let mut vertex_map = keep_vertices.to_vec();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        let mut color_map = keep_colors.to_vec();
        color_map.sort_unstable();
        color_map.dedup();
        if vertex_map.is_empty() {
            return Err(SystemError::EmptyKeep("vertex"));
        }
        if color_map.is_empty() {
            return Err(SystemError::EmptyKeep("color"));
        }
        for &v in &vertex_map {
            self.check_vertex(v)?;
        }
        for &c in &color_map {
            self.check_color(c)?;
        }

        let mut sub = GraphSystem::empty(vertex_map.len(), color_map.len());
        for (nc, &c) in color_map.iter().enumerate() {
            for (nu, &u) in vertex_map.iter().enumerate() {
                for (nv, &v) in vertex_map.iter().enumerate().skip(nu + 1) {
                    if self.adjacent(c, u, v) {
                        sub.set(nc, nu, nv);
                    }
                }
            }
        }
        Ok(Subsystem {
            system: sub,
            vertex_map,
            color_map,
        })
    }
}

/// An induced subsystem together with the maps from its ids back to the
/// parent's ids.
#[derive(Debug, Clone)]
pub struct Subsystem {
    pub system: GraphSystem,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<Vertex>,
    /// `color_map[new] = old`.
    pub color_map: Vec<Color>,
}

impl Subsystem {
    pub fn lift_path(&self, path: &RainbowPath) -> RainbowPath {
        RainbowPath {
            vertices: path.vertices.iter().map(|&v| self.vertex_map[v]).collect(),
            colors: path.colors.iter().map(|&c| self.color_map[c]).collect(),
        }
    }

    pub fn lift_cycle(&self, cycle: &RainbowCycle) -> RainbowCycle {
        RainbowCycle {
            vertices: cycle.vertices.iter().map(|&v| self.vertex_map[v]).collect(),
            colors: cycle.colors.iter().map(|&c| self.color_map[c]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> GraphSystem {
        let edges = (0..n).flat_map(|c| {
            (0..n).flat_map(move |u| (u + 1..n).map(move |v| (c, u, v)))
        });
        GraphSystem::build(n, edges).unwrap()
    }

    fn bipartite(n: usize, left: usize) -> GraphSystem {
        let edges = (0..n).flat_map(|c| (0..left).flat_map(move |u| (left..n).map(move |v| (c, u, v))));
        GraphSystem::build(n, edges).unwrap()
    }

    #[test]
    fn single_edge_is_symmetric() {
        let sys = GraphSystem::build(3, [(0, 0, 1)]).unwrap();
        assert!(sys.adjacent(0, 0, 1));
        assert!(sys.adjacent(0, 1, 0));
        let others = (0..3)
            .flat_map(|c| (0..3).flat_map(move |u| (0..3).map(move |v| (c, u, v))))
            .filter(|&t| t != (0, 0, 1) && t != (0, 1, 0));
        for (c, u, v) in others {
            assert!(!sys.adjacent(c, u, v), "unexpected edge {c} {u} {v}");
        }
        assert_eq!(sys.colors_between(0, 2).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(
            GraphSystem::build(2, [(0, 1, 1)]),
            Err(SystemError::SelfLoop { index: 0, vertex: 1 })
        );
        assert_eq!(
            GraphSystem::build(2, [(0, 0, 1), (0, 0, 2)]),
            Err(SystemError::VertexOutOfRange { index: 1, vertex: 2, n: 2 })
        );
        assert_eq!(
            GraphSystem::build(2, [(2, 0, 1)]),
            Err(SystemError::ColorOutOfRange { index: 0, color: 2, colors: 2 })
        );
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let sys = GraphSystem::build(3, [(1, 0, 2), (1, 2, 0), (1, 0, 2)]).unwrap();
        assert_eq!(sys.edge_count(), 1);
        assert_eq!(sys.edges(), vec![(1, 0, 2)]);
    }

    #[test]
    fn complete_degrees() {
        let k4 = complete(4);
        for c in 0..4 {
            assert_eq!(k4.min_color_degree(c), 3);
        }
        assert_eq!(k4.neighbors(0, 0).collect::<Vec<_>>(), vec![1, 2, 3]);
        let k5 = complete(5);
        assert_eq!(k5.color_degree(2, 0, None), 4);
        let s = BitSet::from_ids(5, [1, 2]);
        assert_eq!(k5.color_degree(2, 0, Some(&s)), 2);
        assert_eq!(complete(6).min_degree(), Some(5));
        assert_eq!(complete(3).colors_between(0, 1).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn empty_and_bipartite_neighbors() {
        let e = GraphSystem::empty(4, 4);
        assert_eq!(e.neighbors(2, 1).count(), 0);
        let k24 = bipartite(6, 2);
        assert_eq!(k24.neighbors(0, 0).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert_eq!(k24.min_color_degree(0), 2);
        assert_eq!(bipartite(6, 3).min_color_degree(4), 3);
    }

    #[test]
    fn colors_between_same_vertex_errors() {
        assert_eq!(complete(3).colors_between(1, 1), Err(SystemError::SameVertex(1)));
    }

    #[test]
    fn induced_identity_and_drop() {
        let k5 = complete(5);
        let all: Vec<usize> = (0..5).collect();
        let same = k5.induced_subsystem(&all, &all).unwrap();
        assert_eq!(same.system, k5);
        assert_eq!(same.vertex_map, all);
        assert_eq!(same.color_map, all);

        let four: Vec<usize> = (0..4).collect();
        let dropped = k5.induced_subsystem(&four, &four).unwrap();
        assert_eq!(dropped.system, complete(4));

        assert_eq!(
            k5.induced_subsystem(&[], &four).unwrap_err(),
            SystemError::EmptyKeep("vertex")
        );
        assert_eq!(
            k5.induced_subsystem(&four, &[]).unwrap_err(),
            SystemError::EmptyKeep("color")
        );
    }

    #[test]
    fn wide_system_crosses_word_boundary() {
        let sys = GraphSystem::build(130, [(5, 3, 129), (5, 64, 65)]).unwrap();
        assert!(sys.adjacent(5, 129, 3));
        assert_eq!(sys.neighbors(5, 3).collect::<Vec<_>>(), vec![129]);
        assert_eq!(sys.color_degree(5, 64, None), 1);
        assert_eq!(sys.edges(), vec![(5, 3, 129), (5, 64, 65)]);
    }
}
