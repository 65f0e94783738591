//! Closing a rainbow path into a rainbow cycle on the same vertices using two
//! spare colors, either directly or through a single rotation.

use thiserror::Error;

use crate::certificate::{verify_rainbow_path, RainbowCycle, RainbowPath, Violation};
use crate::system::{Color, GraphSystem, SystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("input is not a rainbow path: {0}")]
    InvalidPath(Violation),
    #[error("path has {0} vertices, closing needs at least 3")]
    TooShort(usize),
    #[error("spare colors must be distinct, got {0} twice")]
    SameColor(Color),
    #[error("spare color {0} is already used on the path")]
    ColorOnPath(Color),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// `d_c(v_1, V(P)) + d_{c'}(v_p, V(P))`. When this is at least the path's
/// order, [`close_rainbow_cycle`] always succeeds.
pub fn closure_degree_sum(sys: &GraphSystem, path: &RainbowPath, c: Color, c_prime: Color) -> usize {
    let on_path = path.vertex_set(sys.n());
    sys.color_degree(c, path.first(), Some(&on_path))
        + sys.color_degree(c_prime, path.last(), Some(&on_path))
}

/// Closes `path = v_1 .. v_p` into a rainbow cycle on the same vertex set.
///
/// Tries the direct closure `v_1 .. v_p v_1` first, coloring `v_p v_1` with the
/// smaller of `c`, `c_prime` that joins them. Otherwise looks for the smallest
/// `i` in `2..=p-2` with `v_{i+1} ∈ N_c(v_1)` and `v_i ∈ N_{c'}(v_p)` and
/// returns `v_1 .. v_i v_p v_{p-1} .. v_{i+1} v_1`, which drops the path edge
/// `v_i v_{i+1}` and adds the two chords in colors `c'` and `c`.
///
/// `Ok(None)` means neither shape exists.
pub fn close_rainbow_cycle(
    sys: &GraphSystem,
    path: &RainbowPath,
    c: Color,
    c_prime: Color,
) -> Result<Option<RainbowCycle>, RotationError> {
    verify_rainbow_path(sys, path)
        .into_result()
        .map_err(RotationError::InvalidPath)?;
    let p = path.len();
    if p < 3 {
        return Err(RotationError::TooShort(p));
    }
    sys.check_color(c)?;
    sys.check_color(c_prime)?;
    if c == c_prime {
        return Err(RotationError::SameColor(c));
    }
    for spare in [c, c_prime] {
        if path.colors.contains(&spare) {
            return Err(RotationError::ColorOnPath(spare));
        }
    }

    let (first, last) = (path.first(), path.last());
    let vs = &path.vertices;
    let es = &path.colors;

    let (lo, hi) = if c < c_prime { (c, c_prime) } else { (c_prime, c) };
    if let Some(closing) = [lo, hi].into_iter().find(|&s| sys.adjacent(s, last, first)) {
        let mut colors = es.clone();
        colors.push(closing);
        return Ok(Some(RainbowCycle {
            vertices: vs.clone(),
            colors,
        }));
    }

    // 0-based pivot a: v_i = vs[a], v_{i+1} = vs[a + 1].
    let pivot = (1..=p - 3).find(|&a| sys.adjacent(c, first, vs[a + 1]) && sys.adjacent(c_prime, last, vs[a]));
    Ok(pivot.map(|a| {
        let mut vertices = Vec::with_capacity(p);
        let mut colors = Vec::with_capacity(p);
        vertices.extend_from_slice(&vs[..=a]);
        colors.extend_from_slice(&es[..a]);
        colors.push(c_prime);
        for m in (a + 1..p).rev() {
            vertices.push(vs[m]);
            if m > a + 1 {
                colors.push(es[m - 1]);
            }
        }
        colors.push(c);
        RainbowCycle { vertices, colors }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_rainbow_cycle;
    use crate::generators::gen_complete;

    fn path(vertices: &[usize], colors: &[usize]) -> RainbowPath {
        RainbowPath {
            vertices: vertices.to_vec(),
            colors: colors.to_vec(),
        }
    }

    #[test]
    fn direct_closure_prefers_smaller_color() {
        let k4 = gen_complete(4).unwrap();
        let cyc = close_rainbow_cycle(&k4, &path(&[0, 1, 2], &[0, 1]), 3, 2)
            .unwrap()
            .unwrap();
        assert_eq!(cyc.vertices, vec![0, 1, 2]);
        assert_eq!(cyc.colors, vec![0, 1, 2]);
    }

    #[test]
    fn rotation_when_no_direct_edge() {
        // Path 0-1-2-3 with chords 0~2 in color 3 and 3~1 in color 4 only.
        let sys = GraphSystem::build(5, [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 0, 2), (4, 3, 1)]).unwrap();
        let cyc = close_rainbow_cycle(&sys, &path(&[0, 1, 2, 3], &[0, 1, 2]), 3, 4)
            .unwrap()
            .unwrap();
        assert_eq!(cyc.vertices, vec![0, 1, 3, 2]);
        assert_eq!(cyc.colors, vec![0, 4, 2, 3]);
        assert!(verify_rainbow_cycle(&sys, &cyc).is_ok());
    }

    #[test]
    fn not_found_without_chords() {
        let sys = GraphSystem::build(4, [(0, 0, 1), (1, 1, 2), (2, 0, 3)]).unwrap();
        assert_eq!(
            close_rainbow_cycle(&sys, &path(&[0, 1, 2], &[0, 1]), 2, 3).unwrap(),
            None
        );
    }

    #[test]
    fn precondition_errors() {
        let k5 = gen_complete(5).unwrap();
        let p = path(&[0, 1, 2], &[0, 1]);
        assert_eq!(close_rainbow_cycle(&k5, &p, 2, 2), Err(RotationError::SameColor(2)));
        assert_eq!(close_rainbow_cycle(&k5, &p, 1, 2), Err(RotationError::ColorOnPath(1)));
        assert_eq!(
            close_rainbow_cycle(&k5, &path(&[0, 1], &[0]), 2, 3),
            Err(RotationError::TooShort(2))
        );
        assert!(matches!(
            close_rainbow_cycle(&k5, &path(&[0, 1, 1], &[0, 1]), 2, 3),
            Err(RotationError::InvalidPath(_))
        ));
        assert!(matches!(
            close_rainbow_cycle(&k5, &p, 2, 7),
            Err(RotationError::System(SystemError::BadColor { .. }))
        ));
    }

    #[test]
    fn degree_sum_counts_only_path_vertices() {
        let k5 = gen_complete(5).unwrap();
        assert_eq!(closure_degree_sum(&k5, &path(&[0, 1, 2], &[0, 1]), 2, 3), 4);
    }
}
