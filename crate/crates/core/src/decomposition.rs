//! The independence decomposition `V = X ∪ X^c` with `X = I_c ∪ N(I_c)` for a
//! maximum critical independent set `I_c`.
//!
//! `X` does not depend on which maximum critical set is chosen. `G[X]` is
//! König–Egerváry with `I_c` as a maximum independent set, `G[X^c]` has no
//! non-empty critical independent set, and `α(G) = α(G[X]) + α(G[X^c])`, so
//! only the residual `G[X^c]` needs exponential search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::critical::{CriticalReport, CriticalSolver};
use crate::graph::{induced_subgraph, lift, neighborhood, Graph, IndependentSet, VertexSet};
use crate::oracle::{exact_mis, greedy_independent_set, OracleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `α′ = 0`.
    Irreducible,
    /// `α′ > 0` but `α′ < α`.
    Reducible,
    /// `α′ = α`.
    TotallyReducible,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Irreducible => "irreducible",
            Classification::Reducible => "reducible",
            Classification::TotallyReducible => "totally_reducible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    x: VertexSet,
    x_complement: VertexSet,
    critical_set: IndependentSet,
}

impl Decomposition {
    pub(crate) fn from_critical(graph: &Graph, critical_set: IndependentSet) -> Self {
        let x = critical_set.union(&neighborhood(graph, &critical_set));
        Decomposition {
            x_complement: x.complement(graph.n()),
            x,
            critical_set,
        }
    }

    /// `X = I_c ∪ N(I_c)`.
    pub fn x(&self) -> &VertexSet {
        &self.x
    }

    pub fn x_complement(&self) -> &VertexSet {
        &self.x_complement
    }

    /// The maximum critical independent set certifying `X`.
    pub fn critical_set(&self) -> &IndependentSet {
        &self.critical_set
    }

    /// `G[X]` is totally reducible.
    pub fn class_x(&self) -> Classification {
        Classification::TotallyReducible
    }

    /// `G[X^c]` is irreducible.
    pub fn class_x_complement(&self) -> Classification {
        Classification::Irreducible
    }

    pub fn classification(&self) -> Classification {
        if self.x_complement.is_empty() {
            Classification::TotallyReducible
        } else if self.critical_set.is_empty() {
            Classification::Irreducible
        } else {
            Classification::Reducible
        }
    }

    pub fn is_konig_egervary(&self) -> bool {
        self.x_complement.is_empty()
    }
}

pub fn decompose(graph: &Graph) -> Decomposition {
    let report = CriticalSolver::new(graph).max_critical_independent_set();
    decomposition_of(graph, &report)
}

pub fn decomposition_of(graph: &Graph, report: &CriticalReport) -> Decomposition {
    Decomposition::from_critical(graph, report.critical_set.clone())
}

/// Polynomial: total reducibility is read off `X = V` instead of comparing
/// against `α`. The empty graph counts as totally reducible.
pub fn classify(graph: &Graph) -> Classification {
    decompose(graph).classification()
}

/// `α + μ = n`, recognized as `I_c ∪ N(I_c) = V(G)`.
pub fn is_konig_egervary(graph: &Graph) -> bool {
    decompose(graph).is_konig_egervary()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceSolution {
    pub alpha: usize,
    pub set: IndependentSet,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("residual of {} vertices exceeded the search budget; α ≥ {lower_bound}", decomposition.x_complement().len())]
pub struct BudgetExceeded {
    pub decomposition: Decomposition,
    /// `|I_c|` plus the best residual independent set found.
    pub lower_bound: usize,
    pub best: IndependentSet,
}

/// `α(G)` as `|I_c| + α(G[X^c])`, searching only the residual.
pub fn independence_number(graph: &Graph, node_budget: u64) -> Result<IndependenceSolution, BudgetExceeded> {
    let decomposition = decompose(graph);
    solve_residual(graph, decomposition, node_budget)
}

pub(crate) fn solve_residual(
    graph: &Graph,
    decomposition: Decomposition,
    node_budget: u64,
) -> Result<IndependenceSolution, BudgetExceeded> {
    let (residual, id_map) = induced_subgraph(graph, decomposition.x_complement());
    let combine = |part: &IndependentSet| {
        let lifted = lift(part, &id_map);
        IndependentSet::new_unchecked(decomposition.critical_set().union(&lifted))
    };
    match exact_mis(&residual, node_budget) {
        Ok(part) => {
            let set = combine(&part);
            Ok(IndependenceSolution {
                alpha: set.len(),
                set,
                decomposition,
            })
        }
        Err(OracleError::BudgetExceeded { best, .. }) => {
            let greedy = greedy_independent_set(&residual);
            let part = if greedy.len() > best.len() { greedy } else { best };
            let best = combine(&part);
            Err(BudgetExceeded {
                lower_bound: best.len(),
                best,
                decomposition,
            })
        }
        Err(OracleError::TooLarge { .. }) => unreachable!("exact_mis has no size cap"),
    }
}
