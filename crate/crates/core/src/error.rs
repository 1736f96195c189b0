use crate::network::{EdgeId, VertexId};

/// Errors raised by the mutating and constructing operations of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("source and target must differ (both are {0})")]
    SourceIsTarget(VertexId),
    #[error("vertex {vertex} out of range for a network with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {0} does not exist")]
    EdgeOutOfRange(EdgeId),
    #[error("augmenting path is empty")]
    EmptyPath,
    #[error("augmenting path must start at the source {source_vertex}, starts at {found}")]
    PathStart {
        source_vertex: VertexId,
        found: VertexId,
    },
    #[error("augmenting path must end at the target {target}, ends at {found}")]
    PathEnd { target: VertexId, found: VertexId },
    #[error("arc {index} of the augmenting path does not continue from the previous arc")]
    BrokenChain { index: usize },
    #[error("augmenting path visits vertex {0} twice")]
    RepeatedVertex(VertexId),
    #[error("arc {index} of the augmenting path does not match the current residual graph")]
    StaleArc { index: usize },
    #[error("vertex {0} is not reachable from the root")]
    NotReachable(VertexId),
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("mu = {mu} exceeds the vertex count {n}")]
    MuOutOfRange { mu: u64, n: usize },
    #[error("expected edge count must be at least 1")]
    ZeroEdges,
}

/// A broken flow constraint found by a validity check.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("conservation violated at vertex {vertex}: inflow {inflow}, outflow {outflow}")]
    Conservation {
        vertex: VertexId,
        inflow: u64,
        outflow: u64,
    },
    #[error("self-loop edge {0} carries flow")]
    SelfLoopFlow(EdgeId),
    #[error("assignment covers {got} edges, network has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("flow value is negative (source inflow {inflow} > outflow {outflow})")]
    NegativeValue { inflow: u64, outflow: u64 },
    #[error("recorded flow value {recorded} differs from the net source outflow {actual}")]
    ValueMismatch { recorded: u64, actual: u64 },
}
