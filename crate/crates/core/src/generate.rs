//! Deterministic graph families for tests, corpora and benchmarks.
//!
//! Random graphs draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a `(n, p, seed)` triple reproduces byte-for-byte
//! within this implementation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    ErRandom {
        p: f64,
        seed: u64,
    },
    /// Random bipartite graph with `n / 2` vertices on the left side.
    BipartiteRandom {
        p: f64,
        seed: u64,
    },
}

pub fn generate(family: Family, n: usize) -> Result<Graph, GenerateError> {
    match family {
        Family::Path => Ok(path(n)),
        Family::Cycle => cycle(n),
        Family::Complete => Ok(complete(n)),
        Family::Star => Ok(star(n)),
        Family::ErRandom { p, seed } => er_random(n, p, seed),
        Family::BipartiteRandom { p, seed } => bipartite_random(n / 2, n - n / 2, p, seed),
    }
}

fn build(n: usize, mut edges: Vec<(Vertex, Vertex)>) -> Graph {
    edges.sort_unstable();
    Graph::from_sorted_edges(n, &edges)
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::CycleTooSmall(n));
    }
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    Ok(build(n, edges))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect())
}

/// `K_{1,n-1}` with centre 0.
pub fn star(n: usize) -> Graph {
    build(n, (1..n).map(|v| (0, v)).collect())
}

fn check_probability(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::Probability(p))
    }
}

/// Number of failures before the next success of a Bernoulli(p) sequence.
fn geometric_skip(rng: &mut ChaCha8Rng, log_q: f64) -> u64 {
    let r: f64 = rng.gen();
    ((1.0 - r).ln() / log_q).floor() as u64
}

/// G(n, p). Pairs are visited with geometric skipping, so the cost is
/// proportional to the number of edges produced rather than to n².
pub fn er_random(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(complete(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    // walk pairs (v, w) with w < v in row-major order
    let (mut v, mut w) = (1u64, 0u64);
    let n = n as u64;
    loop {
        w += geometric_skip(&mut rng, log_q);
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v >= n {
            break;
        }
        edges.push((w as Vertex, v as Vertex));
        w += 1;
    }
    Ok(build(n as usize, edges))
}

/// Random bipartite graph: left vertices `0..left`, right vertices
/// `left..left + right`, each cross pair present with probability `p`.
pub fn bipartite_random(left: usize, right: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..left {
        for v in 0..right {
            if rng.gen_bool(p) {
                edges.push((u, left + v));
            }
        }
    }
    Ok(build(left + right, edges))
}
