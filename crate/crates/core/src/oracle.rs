//! Brute-force ground truth and instance generation.
//!
//! Everything here exists to check the fast path from the outside: dense
//! per-step flow tables validated against the flow-over-time constraints,
//! exhaustive enumeration of cut functions on tiny instances, and a seeded
//! generator for reproducible random corpora.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cuts::{cut_cost, CutFunction};
use crate::error::{Error, Result};
use crate::expand::{ArcKind, StaticFlowNetwork};
use crate::maxflow::FlowValue;
use crate::network::{
    validate_network, Capacity, RawEdge, RawNetwork, RawPiece, TemporalNetwork, TimeStep,
};

/// Cap on exhaustive cut enumeration; tiny instances only.
pub const ENUMERATION_BUDGET: u64 = 1_000_000;

/// A dense flow table: one value per edge and time step in `[0, T]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowOverTime {
    horizon: TimeStep,
    per_edge: Vec<Vec<u64>>,
}

impl FlowOverTime {
    pub fn zero(edge_count: usize, horizon: TimeStep) -> Self {
        FlowOverTime {
            horizon,
            per_edge: vec![vec![0; horizon as usize + 1]; edge_count],
        }
    }

    pub fn get(&self, edge: usize, t: TimeStep) -> u64 {
        self.per_edge[edge][t as usize]
    }

    pub fn set(&mut self, edge: usize, t: TimeStep, value: u64) {
        self.per_edge[edge][t as usize] = value;
    }

    pub fn horizon(&self) -> TimeStep {
        self.horizon
    }
}

/// Checks a flow table against the three flow-over-time constraints:
/// per-step edge capacities, non-negative holdings at every node except the
/// source, and zero net flow over the full period everywhere but the
/// terminals. Returns the amount that reached the sink.
pub fn validate_flow(
    net: &TemporalNetwork,
    horizon: TimeStep,
    flow: &FlowOverTime,
) -> Result<FlowValue> {
    for (index, edge) in net.edges().iter().enumerate() {
        for t in 0..=horizon {
            if flow.get(index, t) > edge.capacity.eval(t) {
                return Err(Error::CapacityViolated {
                    edge: format!(
                        "{} -> {}",
                        net.node_name(edge.tail),
                        net.node_name(edge.head)
                    ),
                    time: t,
                });
            }
        }
    }

    let mut sink_holding: i128 = 0;
    for node in 0..net.node_count() {
        if node == net.source() {
            continue;
        }
        // holding(t) = arrivals with departure <= t - length, minus
        // departures up to t
        let mut holding: i128 = 0;
        for t in 0..=horizon {
            for (index, edge) in net.edges().iter().enumerate() {
                let length = net.edge_length(edge);
                if edge.head == node && t >= length {
                    holding += i128::from(flow.get(index, t - length));
                }
                if edge.tail == node {
                    holding -= i128::from(flow.get(index, t));
                }
            }
            if holding < 0 {
                return Err(Error::NegativeHolding {
                    node: net.node_name(node).to_string(),
                    time: t,
                });
            }
        }
        if node == net.sink() {
            sink_holding = holding;
        } else if holding != 0 {
            return Err(Error::NonZeroNetFlow(net.node_name(node).to_string()));
        }
    }
    Ok(Capacity::Finite(sink_holding as u64))
}

/// Reads a feasible flow on the full expansion back into per-step edge
/// flows: the flow on the copy departing at `t` becomes `f(t)`. The result
/// is validated before it is returned.
pub fn ten_flow_to_temporal(
    net: &TemporalNetwork,
    horizon: TimeStep,
    expansion: &StaticFlowNetwork,
    arc_flows: &[u64],
) -> Result<FlowOverTime> {
    debug_assert_eq!(arc_flows.len(), expansion.arcs().len());
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (index, edge) in net.edges().iter().enumerate() {
        edge_index.insert((edge.tail, edge.head), index);
    }
    let mut flow = FlowOverTime::zero(net.edge_count(), horizon);
    for (arc, &value) in expansion.arcs().iter().zip(arc_flows) {
        if arc.kind != ArcKind::Transmission || value == 0 {
            continue;
        }
        let pair = (expansion.base_of(arc.tail), expansion.base_of(arc.head));
        let index = edge_index[&pair];
        flow.set(index, expansion.time_of(arc.tail), value);
    }
    validate_flow(net, horizon, &flow)?;
    Ok(flow)
}

/// Enumerates every cut function (interior assignments range over
/// `[0, T + 1]`) and returns all of minimum cost. Guarded by
/// [`ENUMERATION_BUDGET`].
pub fn enumerate_min_cuts(net: &TemporalNetwork, horizon: TimeStep) -> Result<Vec<CutFunction>> {
    let interior: Vec<usize> = (0..net.node_count())
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    let levels = u128::from(horizon) + 2;
    let mut combinations: u128 = 1;
    for _ in &interior {
        combinations = combinations.saturating_mul(levels);
        if combinations > u128::from(ENUMERATION_BUDGET) {
            return Err(Error::BudgetExceeded {
                needed: combinations.min(u128::from(u64::MAX)) as u64,
                budget: ENUMERATION_BUDGET,
            });
        }
    }

    let mut values = vec![0; net.node_count()];
    values[net.sink()] = horizon + 1;
    let mut counters = vec![0u64; interior.len()];
    let mut best_cost = u64::MAX;
    let mut best: Vec<CutFunction> = Vec::new();
    loop {
        for (slot, &node) in interior.iter().enumerate() {
            values[node] = counters[slot];
        }
        let cut = CutFunction::new(net, horizon, values.clone())?;
        let cost = cut_cost(net, horizon, &cut)?;
        if cost < best_cost {
            best_cost = cost;
            best.clear();
        }
        if cost == best_cost {
            best.push(cut);
        }
        // odometer step
        let mut slot = 0;
        loop {
            if slot == counters.len() {
                return Ok(best);
            }
            counters[slot] += 1;
            if counters[slot] <= horizon + 1 {
                break;
            }
            counters[slot] = 0;
            slot += 1;
        }
    }
}

/// Knobs for the random instance generator.
#[derive(Debug, Clone)]
pub struct GenParams {
    pub node_count: usize,
    pub edge_count: usize,
    pub max_pieces_per_edge: usize,
    pub max_capacity: u64,
    pub tau: TimeStep,
    pub horizon: TimeStep,
    /// When set, each edge draws its travel time from this pool instead of
    /// using `tau`.
    pub edge_lengths: Option<Vec<TimeStep>>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            node_count: 4,
            edge_count: 5,
            max_pieces_per_edge: 3,
            max_capacity: 8,
            tau: 1,
            horizon: 20,
            edge_lengths: None,
        }
    }
}

/// Deterministically generates a random network from a seed: a seeded
/// source-to-sink path first (so instances tend to carry flow), then random
/// distinct edges, each with random piece boundaries and values in range.
/// The same seed always yields the bit-identical network.
pub fn gen_random_network(seed: u64, params: &GenParams) -> Result<TemporalNetwork> {
    let n = params.node_count;
    let m = params.edge_count;
    if n < 2 || m > n * (n - 1) {
        return Err(Error::InfeasibleParameters { nodes: n, edges: m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut names = vec!["s".to_string()];
    for i in 1..n - 1 {
        names.push(format!("v{i}"));
    }
    names.push("d".to_string());
    let source = 0;
    let sink = n - 1;

    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    if m > 0 {
        // seed a simple source-to-sink path through a few interior nodes
        let hops = rng.gen_range(0..=(n - 2).min(m.saturating_sub(1)));
        let mut interior: Vec<usize> = (1..n - 1).collect();
        for i in (1..interior.len()).rev() {
            interior.swap(i, rng.gen_range(0..=i));
        }
        let mut path = vec![source];
        path.extend(interior.into_iter().take(hops));
        path.push(sink);
        for pair in path.windows(2) {
            let edge = (pair[0], pair[1]);
            if used.insert(edge) {
                chosen.push(edge);
            }
        }
    }
    // fill the remainder from the unused pairs, rejection-free
    let mut pool: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && !used.contains(&(a, b)))
        .collect();
    while chosen.len() < m {
        let pick = rng.gen_range(0..pool.len());
        chosen.push(pool.swap_remove(pick));
    }

    let mut edges = Vec::with_capacity(m);
    for &(tail, head) in &chosen {
        let want = rng.gen_range(1..=params.max_pieces_per_edge.max(1));
        let mut boundaries = std::collections::BTreeSet::new();
        if params.horizon >= 1 {
            let target = (want - 1).min(params.horizon as usize);
            while boundaries.len() < target {
                boundaries.insert(rng.gen_range(1..=params.horizon));
            }
        }
        let mut capacity = Vec::new();
        let mut last_value: Option<i64> = None;
        for from_time in std::iter::once(0).chain(boundaries) {
            let value = rng.gen_range(0..=params.max_capacity) as i64;
            if last_value == Some(value) {
                continue; // keep the pieces canonical as generated
            }
            last_value = Some(value);
            capacity.push(RawPiece {
                from_time: from_time as i64,
                value,
            });
        }
        let length = params
            .edge_lengths
            .as_ref()
            .map(|pool| pool[rng.gen_range(0..pool.len())] as i64);
        edges.push(RawEdge {
            from: names[tail].clone(),
            to: names[head].clone(),
            capacity,
            length,
        });
    }

    let raw = RawNetwork {
        nodes: names,
        source: "s".into(),
        sink: "d".into(),
        tau: params.tau as i64,
        edges,
    };
    let validated = validate_network(&raw)?;
    debug_assert!(validated.warnings.is_empty(), "generator output is canonical");
    Ok(validated.network)
}
