//! Cross-checks every solver contract on one graph against the exhaustive
//! oracle. Drives `critindep oracle-check`.

use std::collections::BTreeMap;

use crate::bipartite::{bipartite_double, max_matching, saturating_matching};
use crate::critical::{excess, merge_critical, CriticalReport, CriticalSolver};
use crate::decomposition::{decomposition_of, independence_number};
use crate::graph::{induced_subgraph, neighborhood, Graph, IndependentSet, VertexSet};
use crate::oracle::{oracle_report, OracleError, DEFAULT_NODE_BUDGET};
use crate::report::{analyze, verify_report};

/// Pairwise merge checks are quadratic in the number of critical sets; they
/// run only up to this order.
pub const PAIR_CHECK_MAX_N: usize = 10;

/// Every invariant name, in report order.
pub const INVARIANTS: &[&str] = &[
    "d_matches_oracle",
    "subset_difference_equivalence",
    "alpha_prime_matches_oracle",
    "max_critical_is_critical",
    "pendants_included",
    "membership_matches_oracle",
    "alpha_prime_le_alpha",
    "half_alpha_implies_reducible",
    "critical_in_maximum_set",
    "saturating_matching",
    "merge_critical_pairs",
    "additivity",
    "x_totally_reducible",
    "residual_irreducible",
    "x_unique",
    "ke_equivalence",
    "pipeline_alpha",
    "report_verifies",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

/// Deliberate corruption of the solver output, for testing the harness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tamper {
    #[default]
    None,
    /// Report `α′ + 1` from the solver.
    InflateAlphaPrime,
}

/// Per-invariant tallies over a corpus.
#[derive(Clone, Debug, Default)]
pub struct AuditSummary {
    pub graphs: usize,
    pub checks: BTreeMap<&'static str, usize>,
    pub violations: BTreeMap<&'static str, usize>,
}

impl AuditSummary {
    pub fn record(&mut self, checked: &[&'static str], violations: &[Violation]) {
        self.graphs += 1;
        for name in checked {
            *self.checks.entry(name).or_default() += 1;
        }
        for v in violations {
            *self.violations.entry(v.invariant).or_default() += 1;
        }
    }

    pub fn total_violations(&self) -> usize {
        self.violations.values().sum()
    }
}

pub struct GraphAudit {
    pub checked: Vec<&'static str>,
    pub violations: Vec<Violation>,
}

struct Recorder {
    checked: Vec<&'static str>,
    violations: Vec<Violation>,
}

impl Recorder {
    fn check(&mut self, invariant: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if !self.checked.contains(&invariant) {
            self.checked.push(invariant);
        }
        if !ok {
            self.violations.push(Violation {
                invariant,
                detail: detail(),
            });
        }
    }
}

/// An isolated or pendant vertex absent from `set`. The two ends of a `K2`
/// component exclude each other, so there one end suffices.
pub fn pendant_missing(graph: &Graph, set: &VertexSet, v: usize) -> bool {
    match *graph.neighbors(v) {
        [] => !set.contains(v),
        [q] if graph.degree(q) == 1 => !set.contains(v) && !set.contains(q),
        [_] => !set.contains(v),
        _ => false,
    }
}

fn to_set(graph: &Graph, ids: &[usize]) -> IndependentSet {
    IndependentSet::from_ids(graph, ids.iter().copied()).expect("oracle sets are independent")
}

pub fn audit_graph(graph: &Graph, tamper: Tamper) -> Result<GraphAudit, OracleError> {
    let oracle = oracle_report(graph)?;
    let n = graph.n();
    let mut rec = Recorder {
        checked: Vec::new(),
        violations: Vec::new(),
    };

    let solver = CriticalSolver::new(graph);
    let mu_double = max_matching(bipartite_double(graph).graph()).len();
    let d = n - mu_double;
    rec.check(
        "d_matches_oracle",
        d as isize == oracle.d && solver.critical_difference() == d,
        || format!("n - mu(B) = {d}, oracle d = {}", oracle.d),
    );
    rec.check(
        "subset_difference_equivalence",
        oracle.d == oracle.d_all_subsets,
        || {
            format!(
                "independent max {} vs all-subsets max {}",
                oracle.d, oracle.d_all_subsets
            )
        },
    );

    let mut critical: CriticalReport = solver.max_critical_independent_set();
    if tamper == Tamper::InflateAlphaPrime {
        critical.alpha_prime += 1;
    }
    let ic = &critical.critical_set;
    rec.check(
        "alpha_prime_matches_oracle",
        critical.alpha_prime == oracle.alpha_prime && ic.len() == critical.alpha_prime,
        || {
            format!(
                "solver alpha' = {}, oracle alpha' = {}",
                critical.alpha_prime, oracle.alpha_prime
            )
        },
    );
    rec.check("max_critical_is_critical", excess(graph, ic) == oracle.d, || {
        format!("I_c = {:?} has excess {}", ic.as_slice(), excess(graph, ic))
    });
    if n >= 3 {
        let missing: Vec<_> = graph.vertices().filter(|&v| pendant_missing(graph, ic, v)).collect();
        rec.check("pendants_included", missing.is_empty(), || {
            format!("pendant/isolated vertices {missing:?} missing from I_c")
        });
    }
    let mut in_oracle_set = vec![false; n];
    for set in &oracle.critical_sets {
        for &v in set {
            in_oracle_set[v] = true;
        }
    }
    rec.check(
        "membership_matches_oracle",
        critical.per_vertex == in_oracle_set,
        || format!("solver {:?} vs oracle {:?}", critical.per_vertex, in_oracle_set),
    );
    rec.check("alpha_prime_le_alpha", oracle.alpha_prime <= oracle.alpha, || {
        format!("alpha' = {} > alpha = {}", oracle.alpha_prime, oracle.alpha)
    });
    if 2 * oracle.alpha >= n && n > 0 {
        rec.check("half_alpha_implies_reducible", critical.alpha_prime > 0, || {
            format!("alpha = {} >= n/2 but alpha' = 0", oracle.alpha)
        });
    }

    let mis_masks: Vec<VertexSet> = oracle
        .maximum_independent_sets
        .iter()
        .map(|s| VertexSet::new(graph, s.iter().copied()).expect("in range"))
        .collect();
    let sets: Vec<IndependentSet> = oracle.critical_sets.iter().map(|s| to_set(graph, s)).collect();
    for set in &sets {
        rec.check(
            "critical_in_maximum_set",
            mis_masks.iter().any(|m| set.is_subset(m)),
            || format!("critical set {:?} lies in no maximum independent set", set.as_slice()),
        );
        let nb = neighborhood(graph, set);
        rec.check(
            "saturating_matching",
            matches!(saturating_matching(graph, &nb, set), Ok(Some(_))),
            || format!("no matching of N({:?}) into it", set.as_slice()),
        );
    }
    if n <= PAIR_CHECK_MAX_N {
        for first in &sets {
            let closed = first.union(&neighborhood(graph, first));
            let n_first = neighborhood(graph, first);
            for second in &sets {
                let n_second = neighborhood(graph, second);
                let lhs = first.intersection(&n_second).len();
                let rhs = second.intersection(&n_first).len();
                let j = second.difference(&closed);
                let outside = n_second.difference(&closed);
                let merged = merge_critical(graph, first, second);
                let ok = lhs == rhs
                    && j.len() >= outside.len()
                    && merged.as_ref().is_ok_and(|m| {
                        *m.as_set() == first.union(&j)
                            && IndependentSet::new(graph, m.as_set().clone()).is_ok()
                            && excess(graph, m) == oracle.d
                    });
                rec.check("merge_critical_pairs", ok, || {
                    format!("pair {:?}, {:?}", first.as_slice(), second.as_slice())
                });
            }
        }
    }

    let decomposition = decomposition_of(graph, &critical);
    let (gx, _) = induced_subgraph(graph, decomposition.x());
    let (gxc, _) = induced_subgraph(graph, decomposition.x_complement());
    let ox = oracle_report(&gx)?;
    let oxc = oracle_report(&gxc)?;
    rec.check("additivity", oracle.alpha == ox.alpha + oxc.alpha, || {
        format!(
            "alpha = {}, alpha(G[X]) = {}, alpha(G[Xc]) = {}",
            oracle.alpha, ox.alpha, oxc.alpha
        )
    });
    rec.check(
        "x_totally_reducible",
        ox.alpha == ic.len() && ox.alpha_prime == ic.len(),
        || {
            format!(
                "alpha(G[X]) = {}, alpha'(G[X]) = {}, |I_c| = {}",
                ox.alpha,
                ox.alpha_prime,
                ic.len()
            )
        },
    );
    rec.check("residual_irreducible", oxc.alpha_prime == 0, || {
        format!("G[Xc] has alpha' = {}", oxc.alpha_prime)
    });
    rec.check(
        "x_unique",
        oracle.unique_x() == Some(decomposition.x().as_slice()),
        || {
            format!(
                "oracle candidates {:?}, solver X {:?}",
                oracle.x_candidates,
                decomposition.x().as_slice()
            )
        },
    );
    rec.check(
        "ke_equivalence",
        decomposition.is_konig_egervary() == (n - oracle.alpha == oracle.mu),
        || {
            format!(
                "is_ke = {}, tau = {}, mu = {}",
                decomposition.is_konig_egervary(),
                n - oracle.alpha,
                oracle.mu
            )
        },
    );
    match independence_number(graph, DEFAULT_NODE_BUDGET) {
        Ok(solution) => rec.check(
            "pipeline_alpha",
            solution.alpha == oracle.alpha && IndependentSet::new(graph, solution.set.as_set().clone()).is_ok(),
            || format!("pipeline alpha {}, oracle {}", solution.alpha, oracle.alpha),
        ),
        Err(e) => rec.check("pipeline_alpha", false, || e.to_string()),
    }
    let analysis = analyze(graph, DEFAULT_NODE_BUDGET);
    let mut report = analysis.report;
    if tamper == Tamper::InflateAlphaPrime {
        report.alpha_prime += 1;
    }
    match verify_report(graph, &report) {
        Ok(v) => rec.check("report_verifies", v.is_empty(), || v.join("; ")),
        Err(e) => rec.check("report_verifies", false, || e.to_string()),
    }

    Ok(GraphAudit {
        checked: rec.checked,
        violations: rec.violations,
    })
}

/// Every labelled simple graph on `n` vertices (2^(n choose 2) of them).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 32, "too many graphs to enumerate");
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted_edges(n, &edges)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::er_random;

    #[test]
    fn clean_on_small_random_graphs() {
        for seed in 0..30 {
            let g = er_random(7, 0.35, seed).unwrap();
            let audit = audit_graph(&g, Tamper::None).unwrap();
            assert!(audit.violations.is_empty(), "{:?}", audit.violations);
        }
    }

    #[test]
    fn tamper_is_detected() {
        let g = er_random(6, 0.3, 1).unwrap();
        let audit = audit_graph(&g, Tamper::InflateAlphaPrime).unwrap();
        assert!(audit
            .violations
            .iter()
            .any(|v| v.invariant == "alpha_prime_matches_oracle"));
        assert!(audit.violations.iter().any(|v| v.invariant == "report_verifies"));
    }

    #[test]
    fn enumerates_all_graphs() {
        assert_eq!(all_graphs(3).count(), 8);
        assert_eq!(all_graphs(4).count(), 64);
        assert_eq!(all_graphs(0).count(), 1);
    }
}
