//! Instance factories: dense and extremal systems, and seeded random systems
//! with a prescribed minimum degree in every color class.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::exec::Exec;
use crate::system::{Color, GraphSystem, Vertex};

pub const DEFAULT_EXTRA_DENSITY: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("n = {n} is too small, need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("n = {0} must be even")]
    OddOrder(usize),
    #[error("minimum degree {min_deg} is impossible on {n} vertices")]
    InfeasibleDegree { min_deg: usize, n: usize },
    #[error("extra edge density {0} is not a probability")]
    BadDensity(f64),
}

fn at_least(n: usize, min: usize) -> Result<(), GenError> {
    if n < min {
        Err(GenError::TooSmall { n, min })
    } else {
        Ok(())
    }
}

/// `n` copies of `K_n`.
pub fn gen_complete(n: usize) -> Result<GraphSystem, GenError> {
    at_least(n, 3)?;
    Ok(complete_bipartite_copies(n, |_, _| true))
}

/// `n` copies of `K_{n/2, n/2}` with parts `0..n/2` and `n/2..n`.
pub fn gen_balanced_bipartite(n: usize) -> Result<GraphSystem, GenError> {
    at_least(n, 4)?;
    if n % 2 == 1 {
        return Err(GenError::OddOrder(n));
    }
    let half = n / 2;
    Ok(complete_bipartite_copies(n, |u, v| (u < half) != (v < half)))
}

/// `n` copies of `K_{n/2 - 1, n/2 + 1}` with parts `0..n/2-1` and the rest.
pub fn gen_unbalanced_bipartite(n: usize) -> Result<GraphSystem, GenError> {
    at_least(n, 6)?;
    if n % 2 == 1 {
        return Err(GenError::OddOrder(n));
    }
    let small = n / 2 - 1;
    Ok(complete_bipartite_copies(n, |u, v| (u < small) != (v < small)))
}

fn complete_bipartite_copies(n: usize, joined: impl Fn(Vertex, Vertex) -> bool) -> GraphSystem {
    let mut edges = Vec::new();
    for c in 0..n {
        for u in 0..n {
            for v in u + 1..n {
                if joined(u, v) {
                    edges.push((c, u, v));
                }
            }
        }
    }
    GraphSystem::build(n, edges).expect("generated edges are in range")
}

/// Random square system with `δ(G_c) ≥ min_deg` for every color, using
/// [`DEFAULT_EXTRA_DENSITY`].
pub fn gen_random_min_degree(n: usize, min_deg: usize, seed: u64) -> Result<GraphSystem, GenError> {
    gen_random_min_degree_with(n, min_deg, seed, DEFAULT_EXTRA_DENSITY, Exec::preferred())
}

/// Each color class is drawn independently from its own ChaCha stream
/// (`seed`, stream = color):
///
/// 1. a random perfect matching on a shuffled vertex order (odd `n`: the
///    leftover vertex joins a random other vertex);
/// 2. vertices in shuffled order that are short of `min_deg` take the missing
///    number of distinct new neighbours, uniformly at random;
/// 3. every remaining non-edge is added with probability `extra_density`.
///
/// The result depends only on the arguments, not on `exec`.
pub fn gen_random_min_degree_with(
    n: usize,
    min_deg: usize,
    seed: u64,
    extra_density: f64,
    exec: Exec,
) -> Result<GraphSystem, GenError> {
    at_least(n, 2)?;
    if min_deg > n - 1 {
        return Err(GenError::InfeasibleDegree { min_deg, n });
    }
    if !(0.0..=1.0).contains(&extra_density) {
        return Err(GenError::BadDensity(extra_density));
    }
    let per_color = exec.map((0..n).collect(), |c| random_class(n, min_deg, seed, c, extra_density));
    let edges = per_color
        .into_iter()
        .enumerate()
        .flat_map(|(c, pairs)| pairs.into_iter().map(move |(u, v)| (c, u, v)));
    let sys = GraphSystem::build(n, edges).expect("generated edges are in range");
    debug_assert!(sys.min_degree().is_some_and(|d| d >= min_deg));
    Ok(sys)
}

fn random_class(n: usize, min_deg: usize, seed: u64, color: Color, extra_density: f64) -> Vec<(Vertex, Vertex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(color as u64);

    let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    let add = |adj: &mut [BitSet], u: Vertex, v: Vertex| {
        adj[u].insert(v);
        adj[v].insert(u);
    };

    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    for pair in order.chunks_exact(2) {
        add(&mut adj, pair[0], pair[1]);
    }
    if n % 2 == 1 {
        let last = order[n - 1];
        let other = order[rng.random_range(0..n - 1)];
        add(&mut adj, last, other);
    }

    order.shuffle(&mut rng);
    for &v in &order {
        let need = min_deg.saturating_sub(adj[v].len());
        if need == 0 {
            continue;
        }
        let candidates: Vec<Vertex> = (0..n).filter(|&u| u != v && !adj[v].contains(u)).collect();
        for &u in candidates.choose_multiple(&mut rng, need) {
            add(&mut adj, v, u);
        }
    }

    let mut pairs = Vec::new();
    for (u, row) in adj.iter().enumerate() {
        for v in u + 1..n {
            // One draw per pair keeps the stream layout independent of adjacency.
            let sprinkle = rng.random_bool(extra_density);
            if row.contains(v) || sprinkle {
                pairs.push((u, v));
            }
        }
    }
    pairs
}
