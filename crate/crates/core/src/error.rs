//! Crate-wide error type.

use crate::network::TimeStep;
use thiserror::Error;

/// Every fallible operation in this crate returns this error type.
///
/// Variants fall into three groups: input validation failures, resource
/// guards (`BudgetExceeded`), and internal self-checks that indicate an
/// implementation bug if they ever fire (`DualityViolation`,
/// `BoundViolation`, `CostIncreased`, `NotMonotone`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: String, to: String },
    #[error("self loop on node `{0}`")]
    SelfLoop(String),
    #[error("source equals sink (`{0}`)")]
    SourceEqualsSink(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("capacity pieces for edge {from} -> {to} are not canonical: {reason}")]
    NonCanonicalPieces {
        from: String,
        to: String,
        reason: String,
    },
    #[error("negative value in field `{field}`: {value}")]
    NegativeValue { field: String, value: i64 },
    #[error("arithmetic overflow")]
    ArithmeticOverflow,
    #[error("{got} distinct edge lengths exceed the configured bound {bound}")]
    TooManyDistinctLengths { got: usize, bound: usize },
    #[error("expansion needs {needed} nodes, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("interval set must lie in [0, {horizon}] and contain 0 and {horizon}")]
    InvalidIntervalSet { horizon: TimeStep },
    #[error("size bound violated: {0}")]
    BoundViolation(String),
    #[error("max-flow/min-cut duality violated: {0}")]
    DualityViolation(String),
    #[error("cut is not monotone in time at node `{0}`")]
    NotMonotone(String),
    #[error("cannot extract a cut function from an infinite cut")]
    InfiniteCut,
    #[error("node {0} is not in the shift set")]
    NodeNotInC(usize),
    #[error("shift would move a pinned assignment at node {0}")]
    ShiftOutOfRange(usize),
    #[error("cut cost increased from {from} to {to} after a shift")]
    CostIncreased { from: u64, to: u64 },
    #[error("input cut is not minimum: a shift decreased its cost from {from} to {to}")]
    NotAMinCut { from: u64, to: u64 },
    #[error("flow exceeds capacity on edge {edge} at time {time}")]
    CapacityViolated { edge: String, time: TimeStep },
    #[error("negative holding at node `{node}` at time {time}")]
    NegativeHolding { node: String, time: TimeStep },
    #[error("nonzero net flow at node `{0}` over the full horizon")]
    NonZeroNetFlow(String),
    #[error("cannot place {edges} directed edges on {nodes} nodes")]
    InfeasibleParameters { nodes: usize, edges: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
