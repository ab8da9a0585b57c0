//! Maximum flow over time on temporal networks.
//!
//! Edges share a static travel time and carry piecewise constant capacities.
//! Instead of expanding the network over every time step, the solver expands
//! it only over the critical times — capacity change points offset by
//! multiples of the travel time — and answers the flow-over-time question
//! with a single steady-state max flow on that condensed network. The result
//! is exact, and every step of the underlying cut argument is executable and
//! tested against full-expansion oracles.
//!
//! Entry points:
//! - [`network::validate_network`] parses and checks the JSON instance format
//! - [`maxflow::max_flow_over_time`] runs the condensed end-to-end pipeline
//! - [`expand::build_ten`] / [`oracle`] provide the brute-force ground truth
//! - [`cuts::normalize_min_cut`] moves a min cut onto the critical times

pub mod critical;
pub mod cuts;
pub mod error;
pub mod expand;
pub mod maxflow;
pub mod network;
pub mod oracle;
#[cfg(test)]
mod testutil;

pub use critical::{
    breaktimes, critical_times, generalized_critical_times, BreaktimeSet, CriticalTimeSet,
    DEFAULT_LENGTH_SET_BOUND,
};
pub use cuts::{
    cut_cost, find_free_component, forbidden_set, normalize_min_cut, pinned_graph, shift_cut,
    CutFunction, Normalized, PinnedGraph, ShiftDirection,
};
pub use error::{Error, Result};
pub use expand::{
    build_cten, build_ten, cten_size_report, isomorphic, Arc, ArcKind, SizeReport,
    StaticFlowNetwork, DEFAULT_NODE_BUDGET,
};
pub use maxflow::{extract_cut_function, max_flow, max_flow_over_time, min_cut, FlowValue, MinCut};
pub use network::{
    validate_network, Capacity, Edge, Piece, PiecewiseConstant, RawEdge, RawNetwork, RawPiece,
    TemporalNetwork, TimeStep, Validated,
};
pub use oracle::{
    enumerate_min_cuts, gen_random_network, ten_flow_to_temporal, validate_flow, FlowOverTime,
    GenParams, ENUMERATION_BUDGET,
};
