//! Critical independent sets and the independence decomposition.
//!
//! A critical independent set `I` maximizes `|I| − |N(I)|` over independent
//! sets. This crate computes maximum critical independent sets in polynomial
//! time through a bipartite-matching reduction, splits any graph into a
//! König–Egerváry part `X` and an independence-irreducible remainder, and uses
//! that split to shrink exact maximum independent set search. An exhaustive
//! oracle cross-checks every contract on small graphs.
//!
//! ```
//! use critindep::{decompose, max_critical_independent_set, Graph};
//!
//! // a pendant edge a-b attached to a triangle at t1
//! let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
//! assert_eq!(max_critical_independent_set(&g).alpha_prime, 1);
//! let d = decompose(&g);
//! assert_eq!(d.x().as_slice(), &[0, 1]);
//! assert_eq!(d.x_complement().as_slice(), &[2, 3, 4]);
//! ```

pub mod audit;
pub mod bench;
pub mod bipartite;
pub mod critical;
pub mod decomposition;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod report;

pub use bipartite::{
    bipartite_double, bipartite_mis, max_matching, saturating_matching, BipartiteDouble, BipartiteGraph,
    BipartiteMatching, Matching,
};
pub use critical::{
    critical_difference, critical_seed, critical_set_containing, in_some_critical_set, is_critical,
    max_critical_independent_set, merge_critical, CriticalError, CriticalReport, CriticalSolver,
};
pub use decomposition::{classify, decompose, independence_number, is_konig_egervary, Classification, Decomposition};
pub use graph::{induced_subgraph, neighborhood, Graph, GraphError, IndependentSet, Vertex, VertexSet};
pub use io::{parse_graph, serialize_graph, Format, ParseError};
pub use oracle::{exact_mis, oracle_report, OracleError, OracleReport};
pub use report::{analyze, verify_report, AnalysisReport};
