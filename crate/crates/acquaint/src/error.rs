use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{what} requires at least {min} vertices, got {n}")]
    TooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid matching at round {round}: {reason}")]
    InvalidMatching {
        round: usize,
        reason: MatchingViolation,
    },
    #[error("conflict coloring needed {needed} colors, limit is {limit}")]
    ColorOverflow { needed: usize, limit: usize },
    #[error("search budget exhausted after {states_explored} states")]
    BudgetExceeded { states_explored: u64 },
    #[error("vertices {i} and {j} are adjacent; no meeting bound applies")]
    DegenerateAdjacent { i: usize, j: usize },
    #[error("strategy targets a different graph")]
    GraphMismatch,
    #[error("exact search supports at most {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
}

/// Why a set of edges fails to be a matching of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingViolation {
    /// The pair is not an edge of the graph.
    NonEdge { u: usize, v: usize },
    /// Two matched edges share this vertex.
    SharedVertex { vertex: usize },
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingViolation::NonEdge { u, v } => write!(f, "({u},{v}) is not an edge"),
            MatchingViolation::SharedVertex { vertex } => {
                write!(f, "vertex {vertex} is matched twice")
            }
        }
    }
}
