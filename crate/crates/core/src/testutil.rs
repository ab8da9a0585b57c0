//! Test-only helpers for building small networks inline.

use crate::network::{validate_network, RawEdge, RawNetwork, RawPiece, TemporalNetwork};

pub type EdgeSpec<'a> = (&'a str, &'a str, &'a [(i64, i64)]);

/// First name is the source, last is the sink.
pub fn net(nodes: &[&str], tau: i64, edges: &[EdgeSpec<'_>]) -> TemporalNetwork {
    let raw = RawNetwork {
        nodes: nodes.iter().map(|s| s.to_string()).collect(),
        source: nodes[0].to_string(),
        sink: nodes[nodes.len() - 1].to_string(),
        tau,
        edges: edges
            .iter()
            .map(|(from, to, pieces)| RawEdge {
                from: from.to_string(),
                to: to.to_string(),
                capacity: pieces
                    .iter()
                    .map(|&(from_time, value)| RawPiece { from_time, value })
                    .collect(),
                length: None,
            })
            .collect(),
    };
    validate_network(&raw).unwrap().network
}
