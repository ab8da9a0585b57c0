//! Instance builders shared by the benchmarks.

use tempoflow_core::{gen_random_network, GenParams, TemporalNetwork, TimeStep};

/// A seeded instance whose capacities keep switching across the whole
/// horizon, so the piece count grows with it. This is the regime the
/// condensed expansion is built for: the full expansion scales with the
/// horizon, the condensed one with the number of changes.
pub fn switching_instance(horizon: TimeStep, pieces_per_edge: usize) -> TemporalNetwork {
    gen_random_network(
        42,
        &GenParams {
            node_count: 6,
            edge_count: 10,
            max_pieces_per_edge: pieces_per_edge,
            max_capacity: 8,
            tau: 2,
            horizon,
            edge_lengths: None,
        },
    )
    .expect("benchmark parameters are valid")
}
