use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex id out of range: {0}")]
    IdOutOfRange(VertexId),
    #[error("vertices unreachable from source: {0:?}")]
    UnreachableVertex(Vec<VertexId>),
    #[error("no edge ({0}, {1})")]
    NoSuchEdge(VertexId, VertexId),
    #[error("path broken: ({0}, {1}) is not an edge")]
    BrokenPath(VertexId, VertexId),
    #[error("distance arithmetic overflow")]
    Overflow,
    #[error("update is not a weight increase")]
    NotAnIncrease,
    #[error("update is not a weight decrease")]
    NotADecrease,
    #[error("minimal-change merge unavailable: graph has a 0-cycle {0:?}")]
    MergeUnavailable(Vec<VertexId>),
    #[error("graph has a 0-cycle {0:?}")]
    ZeroCyclePresent(Vec<VertexId>),
    #[error("graph has a negative cycle")]
    PreconditionViolated,
    #[error("graph is inconsistent (negative cycle)")]
    InconsistentGraph,
    #[error("enumeration cap exceeded: {0} tight-parent assignments")]
    CapExceeded(u128),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
    #[error("{0}")]
    SyntaxError(String),
    #[error("arc count mismatch: header says {expected}, file has {actual}")]
    CountMismatch { expected: usize, actual: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}
