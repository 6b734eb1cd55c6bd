//! Decomposition-as-preprocessing benchmark: exact MIS with and without
//! peeling off `X` first.

use std::time::Instant;

use serde::Serialize;

use crate::decomposition::{decompose, solve_residual};
use crate::generate::{generate, Family, GenerateError};
use crate::graph::Graph;
use crate::oracle::exact_mis;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub graph_id: usize,
    pub n: usize,
    pub m: usize,
    pub x_size: usize,
    pub residual_size: usize,
    pub t_decompose_ms: f64,
    pub t_mis_with_preprocess_ms: f64,
    pub t_mis_without_ms: f64,
    /// Empty when either route ran out of budget.
    pub alpha: Option<usize>,
    /// Empty on incomplete rows.
    pub agreement: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n: usize,
    pub p: f64,
    pub count: usize,
    pub seed: u64,
    pub node_budget: u64,
    /// Draw random bipartite graphs instead of G(n, p).
    pub bipartite: bool,
}

/// Seed of the `index`-th graph of a corpus.
pub fn corpus_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(index as u64)
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn bench_graph(graph_id: usize, graph: &Graph, node_budget: u64) -> BenchRecord {
    let start = Instant::now();
    let decomposition = decompose(graph);
    let t_decompose_ms = millis(start);
    let (x_size, residual_size) = (decomposition.x().len(), decomposition.x_complement().len());

    let start = Instant::now();
    let with = solve_residual(graph, decomposition, node_budget).ok().map(|s| s.alpha);
    let t_mis_with_preprocess_ms = t_decompose_ms + millis(start);

    let start = Instant::now();
    let without = exact_mis(graph, node_budget).ok().map(|s| s.len());
    let t_mis_without_ms = millis(start);

    let (alpha, agreement) = match (with, without) {
        (Some(a), Some(b)) => (Some(a), Some(a == b)),
        _ => (None, None),
    };
    BenchRecord {
        graph_id,
        n: graph.n(),
        m: graph.m(),
        x_size,
        residual_size,
        t_decompose_ms,
        t_mis_with_preprocess_ms,
        t_mis_without_ms,
        alpha,
        agreement,
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, GenerateError> {
    (0..config.count)
        .map(|i| {
            let seed = corpus_seed(config.seed, i);
            let family = if config.bipartite {
                Family::BipartiteRandom { p: config.p, seed }
            } else {
                Family::ErRandom { p: config.p, seed }
            };
            let graph = generate(family, config.n)?;
            Ok(bench_graph(i, &graph, config.node_budget))
        })
        .collect()
}

pub fn write_csv<W: std::io::Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}
