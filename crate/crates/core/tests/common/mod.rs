//! Seeded corpora shared by the integration suites.
#![allow(dead_code)] // each test target uses its own subset

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tempoflow_core::{
    gen_random_network, validate_network, GenParams, RawEdge, RawNetwork, RawPiece,
    TemporalNetwork, TimeStep,
};

pub struct Instance {
    pub network: TemporalNetwork,
    pub horizon: TimeStep,
}

fn instance_seed(base: u64, index: u64) -> u64 {
    base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// The standard corpus: small networks whose full expansion still fits, so
/// every fast-path answer can be checked against it.
pub fn standard_corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let node_count = rng.gen_range(2..=6);
            let edge_count = rng.gen_range(1..=(node_count * (node_count - 1)).min(10));
            let params = GenParams {
                node_count,
                edge_count,
                max_pieces_per_edge: 4,
                max_capacity: rng.gen_range(1..=8),
                tau: rng.gen_range(0..=3),
                horizon: 0, // unused by the generator
                edge_lengths: None,
            };
            let horizon = rng.gen_range(1..=40);
            let params = GenParams { horizon, ..params };
            Instance {
                network: gen_random_network(instance_seed(seed, i as u64), &params).unwrap(),
                horizon,
            }
        })
        .collect()
}

/// Tiny instances where exhaustive cut enumeration is feasible.
pub fn tiny_corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let node_count = rng.gen_range(2..=4);
            let edge_count = rng.gen_range(1..=(node_count * (node_count - 1)).min(6));
            let horizon = rng.gen_range(1..=8);
            let params = GenParams {
                node_count,
                edge_count,
                max_pieces_per_edge: 3,
                max_capacity: rng.gen_range(1..=4),
                tau: rng.gen_range(0..=2),
                horizon,
                edge_lengths: None,
            };
            Instance {
                network: gen_random_network(instance_seed(seed, i as u64), &params).unwrap(),
                horizon,
            }
        })
        .collect()
}

/// Instances whose edges draw their travel times from {1, 2}.
pub fn two_length_corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let node_count = rng.gen_range(2..=4);
            let edge_count = rng.gen_range(1..=(node_count * (node_count - 1)).min(8));
            let horizon = rng.gen_range(1..=30);
            let params = GenParams {
                node_count,
                edge_count,
                max_pieces_per_edge: 3,
                max_capacity: rng.gen_range(1..=6),
                tau: 1,
                horizon,
                edge_lengths: Some(vec![1, 2]),
            };
            Instance {
                network: gen_random_network(instance_seed(seed, i as u64), &params).unwrap(),
                horizon,
            }
        })
        .collect()
}

/// A five-node chain where each hop is open for exactly one time step, in
/// an order that admits no chronological path: the full expansion has a cut
/// of capacity zero, but merging the middle times lets flow hop backwards
/// within an interval.
pub fn staircase_chain() -> (TemporalNetwork, TimeStep) {
    let window = |open: i64, value: i64| -> Vec<RawPiece> {
        let mut pieces = vec![];
        if open > 0 {
            pieces.push(RawPiece {
                from_time: 0,
                value: 0,
            });
        }
        pieces.push(RawPiece {
            from_time: open,
            value,
        });
        pieces.push(RawPiece {
            from_time: open + 1,
            value: 0,
        });
        pieces
    };
    let edge = |from: &str, to: &str, open: i64| RawEdge {
        from: from.into(),
        to: to.into(),
        capacity: window(open, 100),
        length: None,
    };
    let raw = RawNetwork {
        nodes: vec!["s".into(), "a".into(), "b".into(), "c".into(), "d".into()],
        source: "s".into(),
        sink: "d".into(),
        tau: 1,
        edges: vec![
            edge("s", "a", 0),
            edge("a", "b", 2),
            edge("b", "c", 1),
            edge("c", "d", 3),
        ],
    };
    (validate_network(&raw).unwrap().network, 4)
}
