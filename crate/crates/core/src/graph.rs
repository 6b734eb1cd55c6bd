//! Immutable simple undirected graphs and the vertex-set types used throughout
//! the crate.
//!
//! Vertices are dense ids `0..n`. Adjacency is stored in compressed form with
//! every neighbour list sorted ascending, so membership queries are binary
//! searches and iteration order is deterministic.

use std::collections::BTreeMap;
use std::ops::{Deref, Range};

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertices {u} and {v} are adjacent, set is not independent")]
    NotIndependent { u: Vertex, v: Vertex },
    #[error("invalid label {label:?} for vertex {vertex}: labels must be non-empty and contain no whitespace")]
    InvalidLabel { vertex: Vertex, label: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            list.push(if u < v { (u, v) } else { (v, u) });
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_edges(n, &list))
    }

    /// `edges` must be sorted, duplicate-free, with `u < v < n` in every pair.
    pub(crate) fn from_sorted_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        // Sorted (u, v) input leaves every list ascending: smaller neighbours of
        // w arrive while scanning u < w, larger ones when u == w.
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        Graph {
            offsets,
            targets,
            labels: BTreeMap::new(),
        }
    }

    /// Attaches vertex labels. Labels are single whitespace-free tokens so
    /// they survive both text formats.
    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Result<Self, GraphError> {
        for (&vertex, label) in &labels {
            if vertex >= self.n() {
                return Err(GraphError::VertexOutOfRange { vertex, n: self.n() });
            }
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(GraphError::InvalidLabel {
                    vertex,
                    label: label.clone(),
                });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn vertices(&self) -> Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_pendant(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    /// The label when present, otherwise the numeric id.
    pub fn vertex_name(&self, v: Vertex) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    /// Raw compressed adjacency, shared with the bipartite engine.
    pub(crate) fn csr(&self) -> (&[usize], &[Vertex]) {
        (&self.offsets, &self.targets)
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new<I>(graph: &Graph, ids: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut members: Vec<Vertex> = ids.into_iter().collect();
        if let Some(&vertex) = members.iter().find(|&&v| v >= graph.n()) {
            return Err(GraphError::VertexOutOfRange { vertex, n: graph.n() });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet(members))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn all(graph: &Graph) -> Self {
        VertexSet(graph.vertices().collect())
    }

    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect())
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, Vertex>> {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out: Vec<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        out.sort_unstable();
        out.dedup();
        VertexSet(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Complement within `0..n`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// A vertex set certified pairwise non-adjacent in its host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IndependentSet(VertexSet);

impl IndependentSet {
    pub fn new(graph: &Graph, set: VertexSet) -> Result<Self, GraphError> {
        if let Some(&vertex) = set.as_slice().last() {
            if vertex >= graph.n() {
                return Err(GraphError::VertexOutOfRange { vertex, n: graph.n() });
            }
        }
        for u in &set {
            if let Some(&v) = graph.neighbors(u).iter().find(|&&v| set.contains(v)) {
                return Err(GraphError::NotIndependent { u, v });
            }
        }
        Ok(IndependentSet(set))
    }

    pub fn from_ids<I>(graph: &Graph, ids: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        Self::new(graph, VertexSet::new(graph, ids)?)
    }

    pub fn empty() -> Self {
        IndependentSet(VertexSet::empty())
    }

    pub(crate) fn new_unchecked(set: VertexSet) -> Self {
        IndependentSet(set)
    }

    pub fn as_set(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_set(self) -> VertexSet {
        self.0
    }
}

impl Deref for IndependentSet {
    type Target = VertexSet;

    fn deref(&self) -> &VertexSet {
        &self.0
    }
}

/// `N(S)`: the union of the neighbourhoods of the members of `set`. May
/// intersect `set` when `set` is not independent.
pub fn neighborhood(graph: &Graph, set: &VertexSet) -> VertexSet {
    let mut out: Vec<Vertex> = set.iter().flat_map(|u| graph.neighbors(u).iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    VertexSet::from_sorted(out)
}

/// `G[S]` with vertices renumbered `0..|S|` in ascending original order.
/// The returned map sends each new id to its original id. Labels carry over.
pub fn induced_subgraph(graph: &Graph, set: &VertexSet) -> (Graph, Vec<Vertex>) {
    const ABSENT: usize = usize::MAX;
    let mut position = vec![ABSENT; graph.n()];
    for (i, v) in set.iter().enumerate() {
        position[v] = i;
    }
    let mut edges = Vec::new();
    for (i, u) in set.iter().enumerate() {
        for &w in graph.neighbors(u) {
            let j = position[w];
            if j != ABSENT && i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    let mut sub = Graph::from_sorted_edges(set.len(), &edges);
    sub.labels = set
        .iter()
        .enumerate()
        .filter_map(|(i, v)| graph.label(v).map(|l| (i, l.to_owned())))
        .collect();
    (sub, set.as_slice().to_vec())
}

/// Maps a set of subgraph ids back to the host graph through an id map
/// produced by [`induced_subgraph`].
pub fn lift(set: &VertexSet, id_map: &[Vertex]) -> VertexSet {
    // id maps are ascending, so the image stays sorted
    VertexSet::from_sorted(set.iter().map(|v| id_map[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn set(g: &Graph, ids: &[Vertex]) -> VertexSet {
        VertexSet::new(g, ids.iter().copied()).unwrap()
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop { vertex: 1 }));
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(4, 0), (2, 0), (3, 1), (0, 1), (2, 4)]).unwrap();
        for u in g.vertices() {
            assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v, u));
            }
        }
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (0, 4), (1, 3), (2, 4)]
        );
    }

    #[test]
    fn neighborhood_examples() {
        let c4 = cycle(4);
        assert_eq!(neighborhood(&c4, &set(&c4, &[0, 2])).as_slice(), &[1, 3]);
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(neighborhood(&k3, &set(&k3, &[0])).as_slice(), &[1, 2]);
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(neighborhood(&p3, &set(&p3, &[0, 1])).as_slice(), &[0, 1, 2]);
        assert!(neighborhood(&p3, &VertexSet::empty()).is_empty());
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = cycle(5);
        let (sub, map) = induced_subgraph(&c5, &VertexSet::all(&c5));
        assert_eq!(sub, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        // a-b-t1 with triangle t1 t2 t3
        let gtb = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let (tri, map) = induced_subgraph(&gtb, &set(&gtb, &[2, 3, 4]));
        assert_eq!(tri.n(), 3);
        assert_eq!(tri.m(), 3);
        assert_eq!(map, vec![2, 3, 4]);

        let (e, map) = induced_subgraph(&gtb, &VertexSet::empty());
        assert_eq!(e.n(), 0);
        assert!(map.is_empty());
    }

    #[test]
    fn independent_set_checked() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(IndependentSet::from_ids(&p3, [0, 2]).is_ok());
        assert_eq!(
            IndependentSet::from_ids(&p3, [0, 1]),
            Err(GraphError::NotIndependent { u: 0, v: 1 })
        );
        assert!(IndependentSet::from_ids(&p3, [3]).is_err());
    }

    #[test]
    fn labels_validated() {
        let g = Graph::empty(2);
        let bad = BTreeMap::from([(0, "a b".to_owned())]);
        assert!(g.clone().with_labels(bad).is_err());
        let ok = BTreeMap::from([(1, "t1".to_owned())]);
        let g = g.with_labels(ok).unwrap();
        assert_eq!(g.vertex_name(0), "0");
        assert_eq!(g.vertex_name(1), "t1");
    }

    #[test]
    fn set_algebra() {
        let g = Graph::empty(6);
        let a = set(&g, &[0, 2, 4]);
        let b = set(&g, &[2, 3]);
        assert_eq!(a.union(&b).as_slice(), &[0, 2, 3, 4]);
        assert_eq!(a.intersection(&b).as_slice(), &[2]);
        assert_eq!(a.difference(&b).as_slice(), &[0, 4]);
        assert_eq!(a.complement(6).as_slice(), &[1, 3, 5]);
        assert!(set(&g, &[2]).is_subset(&a));
    }
}
