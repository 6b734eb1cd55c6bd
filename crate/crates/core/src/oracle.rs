//! Ground truth by exhaustion, and an exact maximum independent set solver.
//!
//! The enumeration here shares nothing with the bipartite engine: adjacency is
//! re-encoded as bitmasks and the matching number is found by subset dynamic
//! programming, so a bug in one route cannot hide in the other.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, IndependentSet, Vertex, VertexSet};

/// Largest graph `oracle_report` accepts (2^n enumeration).
pub const ORACLE_MAX_N: usize = 22;

/// Default node budget for [`exact_mis`].
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, exhaustive oracle is capped at {max}")]
    TooLarge { n: usize, max: usize },
    #[error("search exceeded {nodes} nodes; best independent set found has size {}", best.len())]
    BudgetExceeded { nodes: u64, best: IndependentSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n: usize,
    /// Critical difference, maximized over independent sets.
    pub d: isize,
    /// `max |S| − |N(S)|` over all vertex subsets.
    pub d_all_subsets: isize,
    pub alpha: usize,
    pub alpha_prime: usize,
    /// Matching number of `G` itself.
    pub mu: usize,
    pub critical_sets: Vec<Vec<Vertex>>,
    pub max_critical_sets: Vec<Vec<Vertex>>,
    pub maximum_independent_sets: Vec<Vec<Vertex>>,
    /// Distinct values of `J_c ∪ N(J_c)` over maximum critical sets `J_c`.
    pub x_candidates: Vec<Vec<Vertex>>,
}

impl OracleReport {
    /// The unique decomposition set, if the candidates agree.
    pub fn unique_x(&self) -> Option<&[Vertex]> {
        match self.x_candidates.as_slice() {
            [x] => Some(x),
            _ => None,
        }
    }
}

fn neighbor_masks(graph: &Graph) -> Vec<u32> {
    graph
        .vertices()
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn mask_to_vec(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn mask_neighborhood(adj: &[u32], mask: u32) -> u32 {
    let mut out = 0;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        out |= adj[v];
        rest &= rest - 1;
    }
    out
}

/// Matching number by subset DP: the lowest live vertex is either left
/// unmatched or matched to a live neighbour.
pub fn brute_force_matching_number(graph: &Graph) -> Result<usize, OracleError> {
    let n = graph.n();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge { n, max: ORACLE_MAX_N });
    }
    let adj = neighbor_masks(graph);
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut memo = vec![u8::MAX; 1usize << n];
    fn solve(mask: u32, adj: &[u32], memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        if memo[mask as usize] != u8::MAX {
            return memo[mask as usize];
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = solve(rest, adj, memo);
        let mut partners = adj[v] & rest;
        while partners != 0 {
            let w = partners.trailing_zeros();
            best = best.max(1 + solve(rest & !(1 << w), adj, memo));
            partners &= partners - 1;
        }
        memo[mask as usize] = best;
        best
    }
    Ok(solve(full, &adj, &mut memo) as usize)
}

pub fn oracle_report(graph: &Graph) -> Result<OracleReport, OracleError> {
    let n = graph.n();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge { n, max: ORACLE_MAX_N });
    }
    let adj = neighbor_masks(graph);
    let mut independent: Vec<(u32, u32)> = Vec::new();
    let mut d_all = isize::MIN;
    for mask in 0u32..(1u32 << n) {
        let nb = mask_neighborhood(&adj, mask);
        d_all = d_all.max(mask.count_ones() as isize - nb.count_ones() as isize);
        if nb & mask == 0 {
            independent.push((mask, nb));
        }
    }
    let diff = |&(m, nb): &(u32, u32)| m.count_ones() as isize - nb.count_ones() as isize;
    let d = independent.iter().map(diff).max().unwrap_or(0);
    let alpha = independent.iter().map(|(m, _)| m.count_ones()).max().unwrap_or(0) as usize;
    let critical: Vec<(u32, u32)> = independent.iter().copied().filter(|s| diff(s) == d).collect();
    let alpha_prime = critical.iter().map(|(m, _)| m.count_ones()).max().unwrap_or(0) as usize;
    let max_critical: Vec<(u32, u32)> = critical
        .iter()
        .copied()
        .filter(|(m, _)| m.count_ones() as usize == alpha_prime)
        .collect();
    let mut x_masks: Vec<u32> = max_critical.iter().map(|&(m, nb)| m | nb).collect();
    x_masks.sort_unstable();
    x_masks.dedup();

    let listed = |sets: &mut dyn Iterator<Item = u32>| {
        let mut out: Vec<Vec<Vertex>> = sets.map(mask_to_vec).collect();
        out.sort();
        out
    };
    Ok(OracleReport {
        n,
        d,
        d_all_subsets: if n == 0 { 0 } else { d_all },
        alpha,
        alpha_prime,
        mu: brute_force_matching_number(graph)?,
        critical_sets: listed(&mut critical.iter().map(|&(m, _)| m)),
        max_critical_sets: listed(&mut max_critical.iter().map(|&(m, _)| m)),
        maximum_independent_sets: listed(
            &mut independent
                .iter()
                .map(|&(m, _)| m)
                .filter(|m| m.count_ones() as usize == alpha),
        ),
        x_candidates: listed(&mut x_masks.into_iter()),
    })
}

/// Fixed-width bitset over vertex ids.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::new(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count_and(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn subtract(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn intersect(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + bit
                })
            })
        })
    }
}

struct Search {
    adj: Vec<Bits>,
    best: Vec<Vertex>,
    nodes: u64,
    budget: u64,
}

struct Exhausted;

impl Search {
    /// Number of cliques in a greedy clique cover of `cand`: an upper bound
    /// on its independence number.
    fn clique_cover_bound(&self, cand: &Bits) -> usize {
        let mut commons: Vec<Bits> = Vec::new();
        for v in cand.iter() {
            match commons.iter_mut().find(|c| c.contains(v)) {
                Some(c) => c.intersect(&self.adj[v]),
                None => {
                    let mut c = self.adj[v].clone();
                    c.intersect(cand);
                    commons.push(c);
                }
            }
        }
        commons.len()
    }

    fn take(&self, cand: &mut Bits, v: Vertex, chosen: &mut Vec<Vertex>) {
        chosen.push(v);
        cand.remove(v);
        cand.subtract(&self.adj[v]);
    }

    fn run(&mut self, mut cand: Bits, chosen: &mut Vec<Vertex>) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        let depth = chosen.len();
        // vertices of degree 0 or 1 in the candidate graph are always safe to take
        loop {
            let low = cand.iter().find(|&v| self.adj[v].count_and(&cand) <= 1);
            match low {
                Some(v) => self.take(&mut cand, v, chosen),
                None => break,
            }
        }
        if cand.is_empty() {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
        } else if chosen.len() + self.clique_cover_bound(&cand) > self.best.len() {
            let pivot = cand
                .iter()
                .max_by_key(|&v| (self.adj[v].count_and(&cand), std::cmp::Reverse(v)))
                .expect("non-empty");
            let reduced = chosen.len();
            let mut with = cand.clone();
            self.take(&mut with, pivot, chosen);
            self.run(with, chosen)?;
            chosen.truncate(reduced);
            cand.remove(pivot);
            self.run(cand, chosen)?;
        }
        chosen.truncate(depth);
        Ok(())
    }
}

/// Minimum-degree greedy independent set.
pub fn greedy_independent_set(graph: &Graph) -> IndependentSet {
    let n = graph.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = graph.vertices().map(|v| graph.degree(v)).collect();
    let mut chosen = Vec::new();
    while let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (degree[v], v)) {
        chosen.push(v);
        let mut removed = vec![v];
        removed.extend(graph.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &u in &removed {
            alive[u] = false;
        }
        for &u in &removed {
            for &w in graph.neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    IndependentSet::new_unchecked(VertexSet::from_sorted(chosen))
}

/// Exact maximum independent set by branch and bound: include/exclude on a
/// maximum-degree vertex (ties to the lowest id), greedy clique cover bound.
/// Fails with the best set found once more than `node_budget` nodes are used.
pub fn exact_mis(graph: &Graph, node_budget: u64) -> Result<IndependentSet, OracleError> {
    let n = graph.n();
    let adj = graph
        .vertices()
        .map(|v| {
            let mut b = Bits::new(n);
            for &w in graph.neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect();
    let mut search = Search {
        adj,
        best: greedy_independent_set(graph).as_slice().to_vec(),
        nodes: 0,
        budget: node_budget,
    };
    let outcome = search.run(Bits::full(n), &mut Vec::new());
    let mut best = search.best;
    best.sort_unstable();
    let best = IndependentSet::new_unchecked(VertexSet::from_sorted(best));
    match outcome {
        Ok(()) => Ok(best),
        Err(Exhausted) => Err(OracleError::BudgetExceeded {
            nodes: search.nodes,
            best,
        }),
    }
}
