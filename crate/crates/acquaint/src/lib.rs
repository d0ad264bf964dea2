//! Acquaintance strategies on finite connected graphs.
//!
//! Agents start one per vertex. Each round, a matching of the graph is
//! chosen and the agents on every matched edge swap places; two agents
//! are acquainted once they have occupied adjacent vertices. The
//! acquaintance time of a graph is the fewest rounds any strategy needs
//! to acquaint all pairs.
//!
//! This crate provides:
//!
//! - [`graph`]: simple graphs, named families, spanning trees, matchings;
//! - [`random`]: seeded G(n, p) sampling, giant components, uniform trees;
//! - [`contour`]: the DFS contour walk of a spanning tree and its marked
//!   positions, which arrange all vertices on a virtual path;
//! - [`path_strategy`]: the odd-even strategy solving paths in exactly
//!   n - 2 rounds, plus closed-form meeting-time bounds;
//! - [`synthesis`]: the general construction emulating the path strategy
//!   along the contour, giving at most `20 * Δ * n` rounds on any
//!   connected graph;
//! - [`simulate`]: strategy execution and completeness certification;
//! - [`exact`]: brute-force minimum-round search for small graphs, with
//!   two independent solvers that cross-check each other;
//! - [`bounds`]: the barbell counting lower bound (n - 2) and the
//!   `20 * Δ * n` upper bound.

pub mod bounds;
pub mod contour;
pub mod error;
pub mod exact;
pub mod graph;
pub mod path_strategy;
pub mod random;
pub mod simulate;
pub mod synthesis;

pub use bounds::{barbell_lower_bound, contour_bound, BarbellBound};
pub use contour::{build_contour, mark_positions, to_dot, Contour};
pub use error::{Error, MatchingViolation, Result};
pub use exact::{
    enumerate_matchings, exact_ac, exact_ac_iddfs, ExactOptions, ExactResult, MAX_EXACT_VERTICES,
};
pub use graph::{
    build_graph, family, is_connected, is_matching, max_degree, spanning_tree, tree_from_pruefer,
    Family, Graph, Matching, SpanningTree, TreePolicy,
};
pub use path_strategy::{path_strategy, predicted_meeting_bound, trajectory, Strategy};
pub use random::{giant_component, gnp, gnp_giant, random_tree};
pub use simulate::{
    apply_matching, init_state, run, run_to_state, run_traced, PairSet, RoundTrace, RunReport,
    SimulationState,
};
pub use synthesis::{
    conflict_color, jobs_for_round, synthesize, synthesize_with, PathRounds, SwapJob,
    SynthesisReport,
};
