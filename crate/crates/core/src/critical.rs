//! Critical differences, critical-set membership, and maximum critical
//! independent sets.
//!
//! For a graph `G` on `n` vertices the critical difference is
//! `d(G) = max_J (|J| − |N(J)|)` over independent sets `J`. Everything here
//! rests on one identity over the bipartite double:
//!
//! ```text
//! d(G) = n − μ(B(G))
//! ```
//!
//! If `A⁺ ∪ C⁻` is independent in `B(G)` then `C ∩ N(A) = ∅`, so
//! `|A| + |C| ≤ n + (|A| − |N(A)|)`; conversely `S⁺ ∪ (V ∖ N(S))⁻` is always
//! independent. With König (`α(B) = 2n − μ(B)`) the two bounds meet. The same
//! argument shows that `{v : v⁺, v⁻ ∈ J}` is a critical independent set of
//! `G` for any maximum independent set `J` of `B(G)`; that set is the seed.
//!
//! A vertex `v` lies in some critical set iff
//! `1 − deg(v) + d(G − N[v]) = d(G)`. The maximum critical set is grown from
//! the seed by absorbing, in ascending id order, a critical set through every
//! qualifying vertex not yet in `I ∪ N(I)`. Each membership test re-augments
//! the matching of `B(G)` after deleting both copies of `N[v]`, which costs a
//! few Hopcroft–Karp phases instead of a fresh run.

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{
    augment_to_maximum, bipartite_double, konig_independent_set, max_matching, Alive, BipartiteGraph, BipartiteMatching,
};
use crate::graph::{neighborhood, Graph, IndependentSet, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error("vertex {0} is not in any critical independent set")]
    NotInCriticalSet(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("independent set {0:?} is not critical")]
    NotCritical(Vec<Vertex>),
}

/// Result of [`max_critical_independent_set`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    /// Critical difference `d(G)`.
    pub d: usize,
    /// A maximum critical independent set.
    pub critical_set: IndependentSet,
    /// `α′(G) = |critical_set|`.
    pub alpha_prime: usize,
    /// Whether each vertex belongs to some critical independent set.
    pub per_vertex: Vec<bool>,
}

/// Matching state of `B(G)` shared by every query on one graph.
pub struct CriticalSolver<'g> {
    graph: &'g Graph,
    double: BipartiteGraph,
    matching: BipartiteMatching,
    d: usize,
}

/// Outcome of deleting `N[v]`: the residual critical difference and the
/// maximum matching of the residual double.
struct Residual {
    d: usize,
    matching: BipartiteMatching,
}

impl<'g> CriticalSolver<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let double = bipartite_double(graph).into_graph();
        let matching = max_matching(&double);
        let d = graph.n() - matching.len();
        CriticalSolver {
            graph,
            double,
            matching,
            d,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn critical_difference(&self) -> usize {
        self.d
    }

    /// The matching number of `B(G)`.
    pub fn double_matching_number(&self) -> usize {
        self.matching.len()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), CriticalError> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(CriticalError::VertexOutOfRange {
                vertex: v,
                n: self.graph.n(),
            })
        }
    }

    fn closed_neighborhood_removed(&self, v: Vertex) -> Vec<bool> {
        let mut alive = vec![true; self.graph.n()];
        alive[v] = false;
        for &w in self.graph.neighbors(v) {
            alive[w] = false;
        }
        alive
    }

    fn residual(&self, alive: &[bool]) -> Residual {
        let mut matching = self.matching.clone();
        matching.restrict(alive, alive);
        augment_to_maximum(
            &self.double,
            &mut matching,
            Alive {
                left: Some(alive),
                right: Some(alive),
            },
        );
        let live = alive.iter().filter(|&&a| a).count();
        Residual {
            d: live - matching.len(),
            matching,
        }
    }

    fn is_member(&self, v: Vertex, residual: &Residual) -> bool {
        1 + residual.d == self.d + self.graph.degree(v)
    }

    pub fn in_some_critical_set(&self, v: Vertex) -> Result<bool, CriticalError> {
        self.check_vertex(v)?;
        let alive = self.closed_neighborhood_removed(v);
        Ok(self.is_member(v, &self.residual(&alive)))
    }

    /// Vertices with both copies in the König independent set of the (live
    /// part of the) double.
    fn seed_from(&self, matching: &BipartiteMatching, alive: Alive<'_>) -> VertexSet {
        let mis = konig_independent_set(&self.double, matching, alive);
        let mut minus = vec![false; self.graph.n()];
        for &v in &mis.right {
            minus[v] = true;
        }
        VertexSet::from_sorted(mis.left.into_iter().filter(|&v| minus[v]).collect())
    }

    pub fn critical_seed(&self) -> IndependentSet {
        IndependentSet::new_unchecked(self.seed_from(&self.matching, Alive::default()))
    }

    pub fn critical_set_containing(&self, v: Vertex) -> Result<IndependentSet, CriticalError> {
        self.check_vertex(v)?;
        let alive = self.closed_neighborhood_removed(v);
        let residual = self.residual(&alive);
        if !self.is_member(v, &residual) {
            return Err(CriticalError::NotInCriticalSet(v));
        }
        Ok(self.containing_from(v, &residual, &alive))
    }

    fn containing_from(&self, v: Vertex, residual: &Residual, alive: &[bool]) -> IndependentSet {
        let seed = self.seed_from(
            &residual.matching,
            Alive {
                left: Some(alive),
                right: Some(alive),
            },
        );
        let mut members = seed.as_slice().to_vec();
        members.push(v);
        members.sort_unstable();
        IndependentSet::new_unchecked(VertexSet::from_sorted(members))
    }

    pub fn is_critical(&self, set: &IndependentSet) -> bool {
        excess(self.graph, set) == self.d as isize
    }

    pub fn max_critical_independent_set(&self) -> CriticalReport {
        let n = self.graph.n();
        let mut current = self.critical_seed().into_set();
        let mut covered = current.union(&neighborhood(self.graph, &current)).to_mask(n);
        let mut per_vertex = vec![false; n];
        let mut tested = vec![false; n];

        for v in 0..n {
            if covered[v] {
                continue;
            }
            tested[v] = true;
            let alive = self.closed_neighborhood_removed(v);
            let residual = self.residual(&alive);
            if !self.is_member(v, &residual) {
                continue;
            }
            per_vertex[v] = true;
            let absorbed = self.containing_from(v, &residual, &alive);
            let additions: Vec<Vertex> = absorbed.iter().filter(|&u| !covered[u]).collect();
            for &u in &additions {
                covered[u] = true;
                for &w in self.graph.neighbors(u) {
                    covered[w] = true;
                }
            }
            current = current.union(&VertexSet::from_sorted(additions));
        }

        // Trade a non-pendant neighbour for its pendant: independence and
        // the excess are preserved, so the set stays maximum critical.
        let mut members = current.to_mask(n);
        for p in 0..n {
            if let [q] = *self.graph.neighbors(p) {
                if members[q] && !members[p] && self.graph.degree(q) > 1 {
                    members[q] = false;
                    members[p] = true;
                    per_vertex[q] = true;
                    tested[q] = true;
                }
            }
        }
        current = VertexSet::from_mask(&members);

        for v in 0..n {
            if current.contains(v) {
                per_vertex[v] = true;
            } else if !tested[v] {
                per_vertex[v] = self.in_some_critical_set(v).expect("vertex in range");
            }
        }

        CriticalReport {
            d: self.d,
            alpha_prime: current.len(),
            critical_set: IndependentSet::new_unchecked(current),
            per_vertex,
        }
    }
}

/// `|S| − |N(S)|`.
pub fn excess(graph: &Graph, set: &VertexSet) -> isize {
    set.len() as isize - neighborhood(graph, set).len() as isize
}

pub fn critical_difference(graph: &Graph) -> usize {
    CriticalSolver::new(graph).critical_difference()
}

pub fn is_critical(graph: &Graph, set: &IndependentSet) -> bool {
    CriticalSolver::new(graph).is_critical(set)
}

pub fn in_some_critical_set(graph: &Graph, v: Vertex) -> Result<bool, CriticalError> {
    CriticalSolver::new(graph).in_some_critical_set(v)
}

pub fn critical_seed(graph: &Graph) -> IndependentSet {
    CriticalSolver::new(graph).critical_seed()
}

pub fn critical_set_containing(graph: &Graph, v: Vertex) -> Result<IndependentSet, CriticalError> {
    CriticalSolver::new(graph).critical_set_containing(v)
}

/// `I_c ∪ (J_c ∖ (I_c ∪ N(I_c)))`, which is again critical when both inputs are.
pub fn merge_critical(
    graph: &Graph,
    first: &IndependentSet,
    second: &IndependentSet,
) -> Result<IndependentSet, CriticalError> {
    let solver = CriticalSolver::new(graph);
    for set in [first, second] {
        if !solver.is_critical(set) {
            return Err(CriticalError::NotCritical(set.as_slice().to_vec()));
        }
    }
    let closed = first.union(&neighborhood(graph, first));
    let extra = second.difference(&closed);
    Ok(IndependentSet::new_unchecked(first.union(&extra)))
}

pub fn max_critical_independent_set(graph: &Graph) -> CriticalReport {
    CriticalSolver::new(graph).max_critical_independent_set()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, star};

    fn ids(set: &IndependentSet) -> Vec<Vertex> {
        set.as_slice().to_vec()
    }

    fn gtb() -> Graph {
        // a=0, b=1, t1=2, t2=3, t3=4
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn critical_difference_examples() {
        assert_eq!(critical_difference(&complete(3)), 0);
        assert_eq!(critical_difference(&path(3)), 1);
        assert_eq!(critical_difference(&star(4)), 2);
        assert_eq!(critical_difference(&Graph::empty(6)), 6);
        assert_eq!(critical_difference(&Graph::empty(0)), 0);
    }

    #[test]
    fn is_critical_examples() {
        let k2 = path(2);
        assert!(is_critical(&k2, &IndependentSet::from_ids(&k2, [0]).unwrap()));
        assert!(is_critical(&k2, &IndependentSet::empty()));
        let p3 = path(3);
        assert!(!is_critical(&p3, &IndependentSet::from_ids(&p3, [1]).unwrap()));
        assert!(is_critical(&p3, &IndependentSet::from_ids(&p3, [0, 2]).unwrap()));
    }

    #[test]
    fn membership_examples() {
        let p3 = path(3);
        assert!(in_some_critical_set(&p3, 0).unwrap());
        assert!(in_some_critical_set(&p3, 2).unwrap());
        assert!(!in_some_critical_set(&p3, 1).unwrap());
        let k3 = complete(3);
        assert!((0..3).all(|v| !in_some_critical_set(&k3, v).unwrap()));
        assert!(in_some_critical_set(&p3, 3).is_err());
    }

    #[test]
    fn seed_examples() {
        assert_eq!(ids(&critical_seed(&path(3))), vec![0, 2]);
        assert!(critical_seed(&complete(3)).is_empty());
        assert_eq!(ids(&critical_seed(&Graph::empty(4))), vec![0, 1, 2, 3]);
    }

    #[test]
    fn containing_examples() {
        assert_eq!(ids(&critical_set_containing(&path(3), 0).unwrap()), vec![0, 2]);
        assert_eq!(ids(&critical_set_containing(&star(4), 2).unwrap()), vec![1, 2, 3]);
        let c4 = cycle(4).unwrap();
        for v in 0..4 {
            assert_eq!(ids(&critical_set_containing(&c4, v).unwrap()), {
                let mut e = vec![v, (v + 2) % 4];
                e.sort();
                e
            });
        }
        assert_eq!(
            critical_set_containing(&path(3), 1),
            Err(CriticalError::NotInCriticalSet(1))
        );
    }

    #[test]
    fn merge_examples() {
        let c4 = cycle(4).unwrap();
        let i = IndependentSet::from_ids(&c4, [0, 2]).unwrap();
        let j = IndependentSet::from_ids(&c4, [1, 3]).unwrap();
        assert_eq!(merge_critical(&c4, &i, &i).unwrap(), i);
        assert_eq!(ids(&merge_critical(&c4, &i, &j).unwrap()), vec![0, 2]);

        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let a = IndependentSet::from_ids(&two_k2, [0]).unwrap();
        let c = IndependentSet::from_ids(&two_k2, [2]).unwrap();
        let merged = merge_critical(&two_k2, &a, &c).unwrap();
        assert_eq!(ids(&merged), vec![0, 2]);
        assert!(is_critical(&two_k2, &merged));

        let p3 = path(3);
        let center = IndependentSet::from_ids(&p3, [1]).unwrap();
        assert!(matches!(
            merge_critical(&p3, &center, &IndependentSet::empty()),
            Err(CriticalError::NotCritical(_))
        ));
    }

    #[test]
    fn max_critical_examples() {
        assert_eq!(max_critical_independent_set(&path(2)).alpha_prime, 1);
        let k3 = max_critical_independent_set(&complete(3));
        assert_eq!(k3.alpha_prime, 0);
        assert!(k3.critical_set.is_empty());
        assert_eq!(max_critical_independent_set(&cycle(5).unwrap()).alpha_prime, 0);
        let r = max_critical_independent_set(&gtb());
        assert_eq!(ids(&r.critical_set), vec![0]);
        assert_eq!(r.d, 0);
        assert_eq!(r.per_vertex, vec![true, false, false, false, false]);
    }

    #[test]
    fn empty_graph() {
        let r = max_critical_independent_set(&Graph::empty(0));
        assert_eq!((r.d, r.alpha_prime), (0, 0));
    }

    #[test]
    fn isolated_vertices_are_members() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = max_critical_independent_set(&g);
        assert_eq!(ids(&r.critical_set), vec![3, 4]);
        assert_eq!(r.d, 2);
    }
}
