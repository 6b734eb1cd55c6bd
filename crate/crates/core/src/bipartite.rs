//! Bipartite graphs, Hopcroft–Karp maximum matching, the König independent
//! set, and the bipartite double `B(G)` on which critical differences are
//! computed.
//!
//! `B(G)` has a left copy `v⁺` and a right copy `v⁻` of every vertex and an
//! edge `u⁺v⁻` for each ordered pair with `uv ∈ E(G)`. Its left-side adjacency
//! is exactly the adjacency of `G`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};

const NIL: usize = usize::MAX;

/// Bipartite graph with sides `0..left` and `0..right`; edges are stored from
/// the left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl BipartiteGraph {
    pub fn from_edges<I>(left: usize, right: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(l, r) in &list {
            if l >= left {
                return Err(GraphError::VertexOutOfRange { vertex: l, n: left });
            }
            if r >= right {
                return Err(GraphError::VertexOutOfRange { vertex: r, n: right });
            }
        }
        list.sort_unstable();
        list.dedup();
        let mut offsets = vec![0; left + 1];
        for &(l, _) in &list {
            offsets[l + 1] += 1;
        }
        for i in 0..left {
            offsets[i + 1] += offsets[i];
        }
        Ok(BipartiteGraph {
            right,
            offsets,
            targets: list.into_iter().map(|(_, r)| r).collect(),
        })
    }

    pub fn left_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn vertex_count(&self) -> usize {
        self.left_count() + self.right
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.targets[self.offsets[l]..self.offsets[l + 1]]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.left_count()).flat_map(move |l| self.neighbors(l).iter().map(move |&r| (l, r)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMatching {
    left_mate: Vec<usize>,
    right_mate: Vec<usize>,
    size: usize,
}

impl BipartiteMatching {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteMatching {
            left_mate: vec![NIL; left],
            right_mate: vec![NIL; right],
            size: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn left_mate(&self, l: usize) -> Option<usize> {
        Some(self.left_mate[l]).filter(|&r| r != NIL)
    }

    pub fn right_mate(&self, r: usize) -> Option<usize> {
        Some(self.right_mate[r]).filter(|&l| l != NIL)
    }

    /// Matched pairs `(left, right)` by ascending left vertex.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_mate
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != NIL)
            .map(|(l, &r)| (l, r))
    }

    /// Drops every pair touching a dead vertex.
    pub(crate) fn restrict(&mut self, alive_left: &[bool], alive_right: &[bool]) {
        for (l, mate) in self.left_mate.iter_mut().enumerate() {
            let r = *mate;
            if r != NIL && !(alive_left[l] && alive_right[r]) {
                *mate = NIL;
                self.right_mate[r] = NIL;
                self.size -= 1;
            }
        }
    }
}

/// Vertices of a bipartite graph, tagged by side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SidedSet {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl SidedSet {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Liveness masks restricting a bipartite graph to a vertex subset without
/// rebuilding it. `None` means every vertex is alive.
#[derive(Clone, Copy, Default)]
pub(crate) struct Alive<'a> {
    pub left: Option<&'a [bool]>,
    pub right: Option<&'a [bool]>,
}

impl Alive<'_> {
    fn left(&self, l: usize) -> bool {
        self.left.is_none_or(|m| m[l])
    }

    fn right(&self, r: usize) -> bool {
        self.right.is_none_or(|m| m[r])
    }
}

/// Hopcroft–Karp, augmenting `matching` in place until it is maximum on the
/// live subgraph. Runs in O(E·√V); the DFS is iterative so path length is not
/// bounded by the call stack.
pub(crate) fn augment_to_maximum(graph: &BipartiteGraph, matching: &mut BipartiteMatching, alive: Alive<'_>) {
    let left = graph.left_count();
    let mut dist = vec![NIL; left];
    let mut next = vec![0usize; left];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    loop {
        queue.clear();
        for (l, dl) in dist.iter_mut().enumerate().take(left) {
            if alive.left(l) && matching.left_mate[l] == NIL {
                *dl = 0;
                queue.push_back(l);
            } else {
                *dl = NIL;
            }
        }
        let mut reachable_free = false;
        while let Some(l) = queue.pop_front() {
            for &r in graph.neighbors(l) {
                if !alive.right(r) {
                    continue;
                }
                let m = matching.right_mate[r];
                if m == NIL {
                    reachable_free = true;
                } else if dist[m] == NIL {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !reachable_free {
            return;
        }

        next.copy_from_slice(&graph.offsets[..left]);
        for root in 0..left {
            if dist[root] != 0 || matching.left_mate[root] != NIL {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&l) = stack.last() {
                if next[l] == graph.offsets[l + 1] {
                    dist[l] = NIL;
                    stack.pop();
                    continue;
                }
                let r = graph.targets[next[l]];
                next[l] += 1;
                if !alive.right(r) {
                    continue;
                }
                let m = matching.right_mate[r];
                if m == NIL {
                    // flip the path recorded on the stack
                    let mut r = r;
                    for &u in stack.iter().rev() {
                        let previous = matching.left_mate[u];
                        matching.left_mate[u] = r;
                        matching.right_mate[r] = u;
                        dist[u] = NIL;
                        r = previous;
                    }
                    matching.size += 1;
                    break;
                } else if dist[m] != NIL && dist[m] == dist[l] + 1 {
                    stack.push(m);
                }
            }
        }
    }
}

pub fn max_matching(graph: &BipartiteGraph) -> BipartiteMatching {
    let mut matching = BipartiteMatching::empty(graph.left_count(), graph.right_count());
    augment_to_maximum(graph, &mut matching, Alive::default());
    matching
}

/// König construction: with `Z` the vertices reachable from free live left
/// vertices by alternating paths, `(L ∖ Z) ∪ (R ∩ Z)` is a minimum vertex
/// cover, and its complement `(L ∩ Z) ∪ (R ∖ Z)` is returned. `matching` must
/// be maximum on the live subgraph.
pub(crate) fn konig_independent_set(
    graph: &BipartiteGraph,
    matching: &BipartiteMatching,
    alive: Alive<'_>,
) -> SidedSet {
    let left = graph.left_count();
    let mut left_seen = vec![false; left];
    let mut right_seen = vec![false; graph.right_count()];
    let mut queue: VecDeque<usize> = (0..left)
        .filter(|&l| alive.left(l) && matching.left_mate[l] == NIL)
        .collect();
    for &l in &queue {
        left_seen[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in graph.neighbors(l) {
            if !alive.right(r) || right_seen[r] || matching.left_mate[l] == r {
                continue;
            }
            right_seen[r] = true;
            let m = matching.right_mate[r];
            if m != NIL && !left_seen[m] {
                left_seen[m] = true;
                queue.push_back(m);
            }
        }
    }
    SidedSet {
        left: (0..left).filter(|&l| alive.left(l) && left_seen[l]).collect(),
        right: (0..graph.right_count())
            .filter(|&r| alive.right(r) && !right_seen[r])
            .collect(),
    }
}

/// A maximum independent set of a bipartite graph, of size `|V| − μ`.
pub fn bipartite_mis(graph: &BipartiteGraph) -> SidedSet {
    let matching = max_matching(graph);
    konig_independent_set(graph, &matching, Alive::default())
}

/// The two copies of a host vertex in `B(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoubleVertex {
    Plus(Vertex),
    Minus(Vertex),
}

impl DoubleVertex {
    pub fn host(self) -> Vertex {
        match self {
            DoubleVertex::Plus(v) | DoubleVertex::Minus(v) => v,
        }
    }
}

/// `B(G)`: left side `v⁺`, right side `v⁻`, both indexed by host vertex id.
#[derive(Clone, Debug)]
pub struct BipartiteDouble<'g> {
    host: &'g Graph,
    graph: BipartiteGraph,
}

pub fn bipartite_double(host: &Graph) -> BipartiteDouble<'_> {
    let (offsets, targets) = host.csr();
    BipartiteDouble {
        host,
        graph: BipartiteGraph {
            right: host.n(),
            offsets: offsets.to_vec(),
            targets: targets.to_vec(),
        },
    }
}

impl<'g> BipartiteDouble<'g> {
    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn into_graph(self) -> BipartiteGraph {
        self.graph
    }

    pub fn has_edge(&self, a: DoubleVertex, b: DoubleVertex) -> bool {
        match (a, b) {
            (DoubleVertex::Plus(u), DoubleVertex::Minus(v)) | (DoubleVertex::Minus(v), DoubleVertex::Plus(u)) => {
                self.graph.neighbors(u).binary_search(&v).is_ok()
            }
            _ => false,
        }
    }
}

/// A matching in a host graph: pairwise vertex-disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(Vertex, Vertex)>,
    mate: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("{u}-{v} is not an edge of the host graph")]
    NotAnEdge { u: Vertex, v: Vertex },
    #[error("vertex {0} is covered twice")]
    Overlap(Vertex),
    #[error("source and target sets share vertex {0}")]
    SidesIntersect(Vertex),
}

impl Matching {
    /// Validates the pairs against `graph`. Pair orientation is kept.
    pub fn from_pairs(graph: &Graph, pairs: Vec<(Vertex, Vertex)>) -> Result<Self, MatchingError> {
        let mut mate = vec![NIL; graph.n()];
        for &(u, v) in &pairs {
            if !graph.has_edge(u, v) {
                return Err(MatchingError::NotAnEdge { u, v });
            }
            for (a, b) in [(u, v), (v, u)] {
                if mate[a] != NIL {
                    return Err(MatchingError::Overlap(a));
                }
                mate[a] = b;
            }
        }
        Ok(Matching { pairs, mate })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate.get(v).copied().filter(|&m| m != NIL)
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.mate(v).is_some()
    }
}

/// A matching that saturates every vertex of `from` using only edges into
/// `into`, or `None` when no such matching exists (Hall's condition fails).
/// Pairs are oriented `(from vertex, into vertex)`.
pub fn saturating_matching(
    graph: &Graph,
    from: &VertexSet,
    into: &VertexSet,
) -> Result<Option<Matching>, MatchingError> {
    if let Some(v) = from.iter().find(|&v| into.contains(v)) {
        return Err(MatchingError::SidesIntersect(v));
    }
    let into_index = |v: Vertex| into.as_slice().binary_search(&v).ok();
    let edges = from.iter().enumerate().flat_map(|(i, u)| {
        graph
            .neighbors(u)
            .iter()
            .filter_map(move |&w| into_index(w).map(|j| (i, j)))
    });
    let bipartite = BipartiteGraph::from_edges(from.len(), into.len(), edges.collect::<Vec<_>>())
        .expect("indices come from the sets themselves");
    let matching = max_matching(&bipartite);
    if matching.len() < from.len() {
        return Ok(None);
    }
    let pairs = matching
        .pairs()
        .map(|(i, j)| (from.as_slice()[i], into.as_slice()[j]))
        .collect();
    Ok(Some(
        Matching::from_pairs(graph, pairs).expect("pairs are disjoint host edges"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    /// Exhaustive maximum matching over edge subsets.
    fn brute_matching(b: &BipartiteGraph) -> usize {
        let edges: Vec<_> = b.edges().collect();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used_l = vec![false; b.left_count()];
            let mut used_r = vec![false; b.right_count()];
            let mut ok = true;
            for (i, &(l, r)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used_l[l] || used_r[r] {
                        ok = false;
                        break;
                    }
                    used_l[l] = true;
                    used_r[r] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    fn is_independent(b: &BipartiteGraph, s: &SidedSet) -> bool {
        s.left
            .iter()
            .all(|&l| b.neighbors(l).iter().all(|r| !s.right.contains(r)))
    }

    #[test]
    fn double_of_k2_is_two_edges() {
        let k2 = graph(2, &[(0, 1)]);
        let d = bipartite_double(&k2);
        assert_eq!(d.graph().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert!(d.has_edge(DoubleVertex::Plus(0), DoubleVertex::Minus(1)));
        assert!(!d.has_edge(DoubleVertex::Plus(0), DoubleVertex::Minus(0)));
    }

    #[test]
    fn double_of_k3_is_a_six_cycle() {
        let k3 = generate::complete(3);
        let d = bipartite_double(&k3);
        let b = d.graph();
        assert_eq!((b.vertex_count(), b.edge_count()), (6, 6));
        // connected and 2-regular on 6 vertices: C6
        assert!((0..3).all(|l| b.neighbors(l).len() == 2));
        let mut seen_l = [false; 3];
        let mut seen_r = [false; 3];
        let mut stack = vec![(true, 0)];
        while let Some((is_left, v)) = stack.pop() {
            if is_left {
                if std::mem::replace(&mut seen_l[v], true) {
                    continue;
                }
                stack.extend(b.neighbors(v).iter().map(|&r| (false, r)));
            } else {
                if std::mem::replace(&mut seen_r[v], true) {
                    continue;
                }
                stack.extend((0..3).filter(|&l| b.neighbors(l).contains(&v)).map(|l| (true, l)));
            }
        }
        assert!(seen_l.iter().chain(&seen_r).all(|&s| s));
        assert_eq!(max_matching(b).len(), 3);
    }

    #[test]
    fn double_of_edgeless() {
        let g = Graph::empty(4);
        let d = bipartite_double(&g);
        assert_eq!((d.graph().vertex_count(), d.graph().edge_count()), (8, 0));
        assert_eq!(max_matching(d.graph()).len(), 0);
        assert_eq!(bipartite_mis(d.graph()).len(), 8);
    }

    #[test]
    fn p3_double_matching_and_mis() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let d = bipartite_double(&p3);
        assert_eq!(brute_matching(d.graph()), 2);
        assert_eq!(max_matching(d.graph()).len(), 2);
        let mis = bipartite_mis(d.graph());
        assert_eq!(mis.len(), 4);
        assert!(is_independent(d.graph(), &mis));
    }

    #[test]
    fn hopcroft_karp_matches_brute_force() {
        for seed in 0..200u64 {
            let left = 1 + (seed % 5) as usize;
            let right = 1 + (seed / 5 % 5) as usize;
            let g = generate::bipartite_random(left, right, 0.45, seed).unwrap();
            let b = BipartiteGraph::from_edges(left, right, g.edges().map(|(u, v)| (u, v - left))).unwrap();
            if b.edge_count() > 12 {
                continue;
            }
            let m = max_matching(&b);
            assert_eq!(m.len(), brute_matching(&b), "seed {seed}");
            let mis = bipartite_mis(&b);
            assert_eq!(mis.len(), b.vertex_count() - m.len());
            assert!(is_independent(&b, &mis));
        }
    }

    #[test]
    fn warm_start_with_dead_vertices() {
        let g = generate::er_random(40, 0.1, 5).unwrap();
        let d = bipartite_double(&g);
        let full = max_matching(d.graph());
        let mut alive = vec![true; 40];
        for v in [0, 3, 7, 8, 20] {
            alive[v] = false;
        }
        let mut warm = full.clone();
        warm.restrict(&alive, &alive);
        let masks = Alive {
            left: Some(&alive),
            right: Some(&alive),
        };
        augment_to_maximum(d.graph(), &mut warm, masks);
        let mut cold = BipartiteMatching::empty(40, 40);
        augment_to_maximum(d.graph(), &mut cold, masks);
        assert_eq!(warm.len(), cold.len());
        assert!(warm.pairs().all(|(l, r)| alive[l] && alive[r]));
        let mis = konig_independent_set(d.graph(), &warm, masks);
        assert_eq!(mis.len(), 2 * 35 - warm.len());
        assert!(is_independent(d.graph(), &mis));
    }

    #[test]
    fn saturating_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let from = VertexSet::new(&p3, [1]).unwrap();
        let into = VertexSet::new(&p3, [0, 2]).unwrap();
        let m = saturating_matching(&p3, &from, &into).unwrap().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.pairs()[0].0, 1);
        assert_eq!(m.mate(m.pairs()[0].1), Some(1));

        let star = generate::star(4);
        let from = VertexSet::new(&star, [0]).unwrap();
        let into = VertexSet::new(&star, [1, 2, 3]).unwrap();
        assert_eq!(saturating_matching(&star, &from, &into).unwrap().unwrap().len(), 1);

        let k3 = generate::complete(3);
        let from = VertexSet::new(&k3, [0, 1]).unwrap();
        let into = VertexSet::new(&k3, [2]).unwrap();
        assert_eq!(saturating_matching(&k3, &from, &into).unwrap(), None);

        let overlapping = VertexSet::new(&k3, [1, 2]).unwrap();
        assert_eq!(
            saturating_matching(&k3, &from, &overlapping),
            Err(MatchingError::SidesIntersect(1))
        );
    }

    #[test]
    fn matching_validation() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert!(Matching::from_pairs(&p3, vec![(0, 1)]).is_ok());
        assert_eq!(
            Matching::from_pairs(&p3, vec![(0, 2)]),
            Err(MatchingError::NotAnEdge { u: 0, v: 2 })
        );
        assert_eq!(
            Matching::from_pairs(&p3, vec![(0, 1), (1, 2)]),
            Err(MatchingError::Overlap(1))
        );
        let m = Matching::from_pairs(&p3, vec![(1, 2)]).unwrap();
        assert_eq!(m.mate(2), Some(1));
        assert_eq!(m.mate(m.mate(2).unwrap()), Some(2));
        assert!(!m.covers(0));
    }
}
