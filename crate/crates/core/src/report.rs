//! Full analysis of a graph as a self-certifying JSON report, and the
//! independent checker for such reports.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bipartite::{saturating_matching, Matching};
use crate::critical::{excess, CriticalSolver};
use crate::decomposition::{decomposition_of, solve_residual, Classification, Decomposition};
use crate::graph::{neighborhood, Graph, IndependentSet, Vertex, VertexSet};
use crate::io::{serialize_graph, Format};
use crate::oracle::brute_force_matching_number;

/// Graphs up to this order get `μ(G)` by exhaustive search when they are not
/// König–Egerváry.
pub const MU_EXACT_MAX_N: usize = 20;

/// SHA-256 of the canonical edge-list serialization, labels excluded.
pub fn graph_sha256(graph: &Graph) -> String {
    let mut text = format!("{} {}\n", graph.n(), graph.m());
    for (u, v) in graph.edges() {
        text.push_str(&format!("{u} {v}\n"));
    }
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub alpha_prime: usize,
    pub alpha: Option<usize>,
    pub mu: Option<usize>,
    pub tau: Option<usize>,
    pub classification: Classification,
    pub is_ke: bool,
    #[serde(rename = "X")]
    pub x: Vec<Vertex>,
    #[serde(rename = "X_complement")]
    pub x_complement: Vec<Vertex>,
    #[serde(rename = "I_c")]
    pub critical_set: Vec<Vertex>,
    pub graph_sha256: String,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Report together with the certificates behind it.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub decomposition: Decomposition,
    /// Saturating matching of `N(I_c)` into `I_c`.
    pub matching: Matching,
    /// A maximum independent set, when the residual search finished.
    pub mis: Option<IndependentSet>,
    /// Lower bound on `α` when the residual search ran out of budget.
    pub alpha_lower_bound: Option<usize>,
}

impl Analysis {
    pub fn budget_exceeded(&self) -> bool {
        self.report.alpha.is_none()
    }
}

pub fn analyze(graph: &Graph, node_budget: u64) -> Analysis {
    let solver = CriticalSolver::new(graph);
    let critical = solver.max_critical_independent_set();
    let decomposition = decomposition_of(graph, &critical);
    let ic = decomposition.critical_set().as_set().clone();
    let n_ic = neighborhood(graph, &ic);
    let matching = saturating_matching(graph, &n_ic, &ic)
        .expect("I_c and N(I_c) are disjoint")
        .expect("critical sets admit a saturating matching");
    let is_ke = decomposition.is_konig_egervary();

    // For KE graphs N(I_c) is a vertex cover matched into I_c, so μ = |N(I_c)|.
    let mu = if is_ke {
        Some(n_ic.len())
    } else if graph.n() <= MU_EXACT_MAX_N {
        brute_force_matching_number(graph).ok()
    } else {
        None
    };

    let (alpha, mis, alpha_lower_bound) = match solve_residual(graph, decomposition.clone(), node_budget) {
        Ok(solution) => (Some(solution.alpha), Some(solution.set), None),
        Err(exceeded) => (None, None, Some(exceeded.lower_bound)),
    };

    let report = AnalysisReport {
        n: graph.n(),
        m: graph.m(),
        d: critical.d,
        alpha_prime: critical.alpha_prime,
        alpha,
        mu,
        tau: alpha.map(|a| graph.n() - a),
        classification: decomposition.classification(),
        is_ke,
        x: decomposition.x().as_slice().to_vec(),
        x_complement: decomposition.x_complement().as_slice().to_vec(),
        critical_set: ic.as_slice().to_vec(),
        graph_sha256: graph_sha256(graph),
    };
    Analysis {
        report,
        decomposition,
        matching,
        mis,
        alpha_lower_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("report hash {reported} does not match graph hash {actual}")]
    HashMismatch { reported: String, actual: String },
}

/// Re-derives every report invariant from `graph` and returns the violated
/// ones; an empty list means the report is verified.
pub fn verify_report(graph: &Graph, report: &AnalysisReport) -> Result<Vec<String>, ReportError> {
    let actual = graph_sha256(graph);
    if report.graph_sha256 != actual {
        return Err(ReportError::HashMismatch {
            reported: report.graph_sha256.clone(),
            actual,
        });
    }
    let mut violations: Vec<String> = Vec::new();
    let n = graph.n();

    if report.n != n {
        violations.push(format!("n mismatch: reported {}, graph has {n}", report.n));
    }
    if report.m != graph.m() {
        violations.push(format!("m mismatch: reported {}, graph has {}", report.m, graph.m()));
    }

    let solver = CriticalSolver::new(graph);
    let d = solver.critical_difference();
    if report.d != d {
        violations.push(format!("d mismatch: reported {}, computed {d}", report.d));
    }

    let valid_ids = |ids: &[Vertex]| ids.windows(2).all(|w| w[0] < w[1]) && ids.iter().all(|&v| v < n);
    if !valid_ids(&report.critical_set) || !valid_ids(&report.x) || !valid_ids(&report.x_complement) {
        violations.push("vertex lists must be sorted, duplicate-free and in range".into());
        return Ok(violations);
    }
    let ic_ids = VertexSet::from_sorted(report.critical_set.clone());
    let x = VertexSet::from_sorted(report.x.clone());
    let xc = VertexSet::from_sorted(report.x_complement.clone());

    let ic = match IndependentSet::new(graph, ic_ids.clone()) {
        Ok(ic) => Some(ic),
        Err(e) => {
            violations.push(format!("I_c is not independent: {e}"));
            None
        }
    };
    if let Some(ic) = &ic {
        if excess(graph, ic) != d as isize {
            violations.push(format!(
                "I_c is not critical: |I_c| - |N(I_c)| = {}, d = {d}",
                excess(graph, ic)
            ));
        }
        let n_ic = neighborhood(graph, ic);
        if saturating_matching(graph, &n_ic, ic).ok().flatten().is_none() {
            violations.push("no matching of N(I_c) into I_c".into());
        }
        if ic.union(&n_ic) != x {
            violations.push("X differs from I_c ∪ N(I_c)".into());
        }
    }
    if report.alpha_prime != ic_ids.len() {
        violations.push(format!(
            "alpha_prime mismatch: reported {}, |I_c| = {}",
            report.alpha_prime,
            ic_ids.len()
        ));
    } else {
        let alpha_prime = solver.max_critical_independent_set().alpha_prime;
        if report.alpha_prime != alpha_prime {
            violations.push(format!(
                "alpha_prime mismatch: reported {}, computed {alpha_prime}",
                report.alpha_prime
            ));
        }
    }
    if !x.intersection(&xc).is_empty() || x.len() + xc.len() != n {
        violations.push("X and X_complement do not partition V".into());
    }

    let x_is_v = x.len() == n;
    if report.is_ke != x_is_v {
        violations.push(if report.is_ke {
            "is_ke contradicts X ≠ V".into()
        } else {
            "is_ke = false contradicts X = V".into()
        });
    }
    let expected_class = if x_is_v {
        Classification::TotallyReducible
    } else if report.alpha_prime == 0 {
        Classification::Irreducible
    } else {
        Classification::Reducible
    };
    if report.classification != expected_class {
        violations.push(format!(
            "classification mismatch: reported {}, expected {expected_class}",
            report.classification
        ));
    }

    match (report.alpha, report.tau) {
        (Some(alpha), Some(tau)) if alpha + tau != n => {
            violations.push(format!("tau = {tau} but n - alpha = {}", n - alpha.min(n)))
        }
        (Some(_), None) | (None, Some(_)) => violations.push("tau must be present exactly when alpha is".into()),
        _ => {}
    }
    if let Some(alpha) = report.alpha {
        if alpha < report.alpha_prime {
            violations.push(format!("alpha = {alpha} is below alpha_prime = {}", report.alpha_prime));
        }
        if x_is_v && alpha != report.alpha_prime {
            violations.push("X = V but alpha ≠ alpha_prime".into());
        }
        if let Some(mu) = report.mu {
            if (alpha + mu == n) != report.is_ke {
                violations.push(format!(
                    "is_ke = {} but alpha + mu = {} (n = {n})",
                    report.is_ke,
                    alpha + mu
                ));
            }
        }
    }
    if let Some(mu) = report.mu {
        if mu > n / 2 {
            violations.push(format!("mu = {mu} exceeds n / 2"));
        }
    }
    Ok(violations)
}

/// Canonical text of the graph, used when dumping offending graphs.
pub fn dump_graph(graph: &Graph) -> String {
    serialize_graph(graph, Format::EdgeList)
}
