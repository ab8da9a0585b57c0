//! Exact max flow and min cut on expanded networks.
//!
//! The solver is Dinic's algorithm: BFS level graph plus blocking flow,
//! integral throughout. Infinite arc capacities are replaced internally by a
//! bound strictly larger than any finite cut, so a result reaching the bound
//! means no finite cut exists and is reported as infinite.

use std::collections::{BTreeSet, VecDeque};

use crate::critical::{critical_times, generalized_critical_times, DEFAULT_LENGTH_SET_BOUND};
use crate::cuts::CutFunction;
use crate::error::{Error, Result};
use crate::expand::{build_cten, StaticFlowNetwork};
use crate::network::{Capacity, TemporalNetwork, TimeStep};

/// A flow value: finite, or infinite when no finite cut separates the
/// terminals.
pub type FlowValue = Capacity;

/// A minimum cut: the nodes on the source side and the total capacity of
/// the arcs leaving them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub source_side: BTreeSet<usize>,
    pub capacity: FlowValue,
}

/// One more than the sum of all finite arc capacities: provably larger than
/// any finite cut, so it can stand in for infinity.
fn infinite_bound(net: &StaticFlowNetwork) -> Result<u64> {
    let mut sum: u128 = 0;
    for arc in net.arcs() {
        if let Capacity::Finite(c) = arc.capacity {
            sum += u128::from(c);
        }
    }
    if sum >= u128::from(u64::MAX) {
        return Err(Error::ArithmeticOverflow);
    }
    Ok(sum as u64 + 1)
}

#[derive(Clone, Copy)]
struct ResidualEdge {
    to: u32,
    cap: u64,
    rev: u32,
}

struct Dinic {
    graph: Vec<Vec<ResidualEdge>>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

const UNREACHED: u32 = u32::MAX;

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            graph: vec![Vec::new(); n],
            level: vec![UNREACHED; n],
            iter: vec![0; n],
        }
    }

    /// Adds a forward edge and its zero-capacity reverse; returns the slot
    /// of the forward edge for later flow extraction.
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> (usize, usize) {
        let rev_from = self.graph[to].len() as u32;
        let rev_to = self.graph[from].len() as u32;
        self.graph[from].push(ResidualEdge {
            to: to as u32,
            cap,
            rev: rev_from,
        });
        self.graph[to].push(ResidualEdge {
            to: from as u32,
            cap: 0,
            rev: rev_to,
        });
        (from, rev_to as usize)
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(UNREACHED);
        self.level[source] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(node) = queue.pop_front() {
            for edge in &self.graph[node] {
                let to = edge.to as usize;
                if edge.cap > 0 && self.level[to] == UNREACHED {
                    self.level[to] = self.level[node] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[sink] != UNREACHED
    }

    /// Finds one augmenting path in the level graph without recursion and
    /// pushes the bottleneck along it. Returns 0 when none is left.
    fn augment(&mut self, source: usize, sink: usize) -> u64 {
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut node = source;
        loop {
            if node == sink {
                let mut bottleneck = u64::MAX;
                for &(from, idx) in &path {
                    bottleneck = bottleneck.min(self.graph[from][idx].cap);
                }
                for &(from, idx) in &path {
                    let edge = self.graph[from][idx];
                    self.graph[from][idx].cap -= bottleneck;
                    self.graph[edge.to as usize][edge.rev as usize].cap += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while self.iter[node] < self.graph[node].len() {
                let idx = self.iter[node];
                let edge = self.graph[node][idx];
                let to = edge.to as usize;
                if edge.cap > 0 && self.level[to] == self.level[node] + 1 {
                    path.push((node, idx));
                    node = to;
                    advanced = true;
                    break;
                }
                self.iter[node] += 1;
            }
            if advanced {
                continue;
            }
            // dead end: retreat, exhausting the edge that led here
            match path.pop() {
                Some((prev, _)) => {
                    self.iter[prev] += 1;
                    node = prev;
                }
                None => return 0,
            }
        }
    }
}

/// Runs Dinic on the network and returns the flow value together with the
/// integral flow on every arc (indexed like `net.arcs()`).
pub fn max_flow(net: &StaticFlowNetwork) -> Result<(FlowValue, Vec<u64>)> {
    assert_ne!(net.source(), net.sink(), "terminals must differ");
    let bound = infinite_bound(net)?;
    let node_count = net.node_count();
    let mut dinic = Dinic::new(node_count);
    let mut slots = Vec::with_capacity(net.arcs().len());
    let mut internal_caps = Vec::with_capacity(net.arcs().len());
    for arc in net.arcs() {
        let cap = arc.capacity.finite().unwrap_or(bound);
        slots.push(dinic.add_edge(arc.tail, arc.head, cap));
        internal_caps.push(cap);
    }

    let (source, sink) = (net.source(), net.sink());
    let mut value: u128 = 0;
    while dinic.bfs(source, sink) {
        dinic.iter.fill(0);
        loop {
            let pushed = dinic.augment(source, sink);
            if pushed == 0 {
                break;
            }
            value += u128::from(pushed);
        }
    }

    let flows: Vec<u64> = slots
        .iter()
        .zip(&internal_caps)
        .map(|(&(from, idx), &cap)| cap - dinic.graph[from][idx].cap)
        .collect();
    let flow_value = if value >= u128::from(bound) {
        Capacity::Infinite
    } else {
        Capacity::Finite(value as u64)
    };
    Ok((flow_value, flows))
}

/// Recovers the minimum cut from a maximum flow: the source side is what
/// stays reachable in the residual graph. The cut capacity is computed
/// directly from the original arcs and checked against the flow value.
pub fn min_cut(net: &StaticFlowNetwork, arc_flows: &[u64]) -> Result<MinCut> {
    if arc_flows.len() != net.arcs().len() {
        return Err(Error::DualityViolation(format!(
            "flow vector has {} entries for {} arcs",
            arc_flows.len(),
            net.arcs().len()
        )));
    }
    let bound = infinite_bound(net)?;
    let node_count = net.node_count();

    // residual adjacency: forward leftovers and backward undo edges
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (arc, &flow) in net.arcs().iter().zip(arc_flows) {
        let cap = arc.capacity.finite().unwrap_or(bound);
        if flow > cap {
            return Err(Error::DualityViolation(format!(
                "arc flow {flow} exceeds capacity {cap}"
            )));
        }
        if cap - flow > 0 {
            adj[arc.tail].push(arc.head);
        }
        if flow > 0 {
            adj[arc.head].push(arc.tail);
        }
    }
    let mut reachable = vec![false; node_count];
    let mut queue = VecDeque::new();
    reachable[net.source()] = true;
    queue.push_back(net.source());
    while let Some(node) = queue.pop_front() {
        for &to in &adj[node] {
            if !reachable[to] {
                reachable[to] = true;
                queue.push_back(to);
            }
        }
    }
    if reachable[net.sink()] {
        return Err(Error::DualityViolation(
            "sink is residually reachable, so the flow is not maximum".into(),
        ));
    }

    // flow value from conservation at the source
    let mut net_out: i128 = 0;
    for (arc, &flow) in net.arcs().iter().zip(arc_flows) {
        if arc.tail == net.source() {
            net_out += i128::from(flow);
        }
        if arc.head == net.source() {
            net_out -= i128::from(flow);
        }
    }
    let flow_value = if net_out < 0 {
        return Err(Error::DualityViolation(
            "negative net flow out of the source".into(),
        ));
    } else if net_out as u128 >= u128::from(bound) {
        Capacity::Infinite
    } else {
        Capacity::Finite(net_out as u64)
    };

    // cut capacity from the original arcs
    let mut cut_capacity = Capacity::Finite(0);
    for arc in net.arcs() {
        if reachable[arc.tail] && !reachable[arc.head] {
            cut_capacity = cut_capacity.checked_add(arc.capacity)?;
        }
    }
    if cut_capacity != flow_value {
        return Err(Error::DualityViolation(format!(
            "cut capacity {cut_capacity} differs from flow value {flow_value}"
        )));
    }

    let source_side = (0..node_count).filter(|&v| reachable[v]).collect();
    Ok(MinCut {
        source_side,
        capacity: cut_capacity,
    })
}

/// Reads a finite cut back as a cut function: each base node maps to the
/// earliest time label on the source side, or `T + 1` if it never joins it.
/// Fails if the cut puts a later copy on the sink side of an earlier one,
/// which a finite cut cannot do.
pub fn extract_cut_function(cut: &MinCut, net: &StaticFlowNetwork) -> Result<CutFunction> {
    if cut.capacity == Capacity::Infinite {
        return Err(Error::InfiniteCut);
    }
    let horizon = net.horizon();
    let k = net.time_count();
    let mut values = Vec::with_capacity(net.base_count());
    for base in 0..net.base_count() {
        let mut earliest: Option<usize> = None;
        for ti in 0..k {
            let inside = cut.source_side.contains(&net.node_id(base, ti));
            match (earliest, inside) {
                (None, true) => earliest = Some(ti),
                (Some(_), false) => {
                    return Err(Error::NotMonotone(net.base_label(base).to_string()));
                }
                _ => {}
            }
        }
        values.push(match earliest {
            Some(ti) => net.time_labels()[ti],
            None => horizon + 1,
        });
    }
    CutFunction::from_values(
        values,
        net.base_of(net.source()),
        net.base_of(net.sink()),
        horizon,
    )
}

/// The end-to-end pipeline: critical times, condensed expansion, one
/// steady-state solve. Networks with several distinct edge lengths go
/// through the generalized critical-time set.
pub fn max_flow_over_time(net: &TemporalNetwork, horizon: TimeStep) -> Result<FlowValue> {
    let boundaries = if net.is_uniform_length() {
        critical_times(net, horizon)
    } else {
        generalized_critical_times(
            net,
            &net.distinct_lengths(),
            horizon,
            DEFAULT_LENGTH_SET_BOUND,
        )?
    };
    let cten = build_cten(net, &boundaries, horizon)?;
    Ok(max_flow(&cten)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::{build_ten, Arc, ArcKind, DEFAULT_NODE_BUDGET};

    use crate::testutil::net;

    /// A bare steady-state network for solver unit tests: two time layers
    /// are not needed, so everything lives at time 0 on distinct bases.
    fn steady(names: &[&str], arcs: &[(usize, usize, Capacity)]) -> StaticFlowNetwork {
        StaticFlowNetwork::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![0],
            arcs.iter()
                .map(|&(tail, head, capacity)| Arc {
                    tail,
                    head,
                    capacity,
                    kind: ArcKind::Transmission,
                })
                .collect(),
            0,
            names.len() - 1,
            0,
        )
    }

    #[test]
    fn parallel_arcs_add_up() {
        let g = steady(
            &["s", "d"],
            &[
                (0, 1, Capacity::Finite(3)),
                (0, 1, Capacity::Finite(4)),
            ],
        );
        let (value, flows) = max_flow(&g).unwrap();
        assert_eq!(value, Capacity::Finite(7));
        assert_eq!(flows, vec![3, 4]);
        let cut = min_cut(&g, &flows).unwrap();
        assert_eq!(cut.capacity, Capacity::Finite(7));
        assert_eq!(cut.source_side, BTreeSet::from([0]));
    }

    #[test]
    fn bottleneck_limits_flow() {
        let g = steady(
            &["s", "a", "d"],
            &[
                (0, 1, Capacity::Finite(5)),
                (1, 2, Capacity::Finite(2)),
            ],
        );
        let (value, flows) = max_flow(&g).unwrap();
        assert_eq!(value, Capacity::Finite(2));
        let cut = min_cut(&g, &flows).unwrap();
        assert_eq!(cut.source_side, BTreeSet::from([0, 1]));
        assert_eq!(cut.capacity, Capacity::Finite(2));
    }

    #[test]
    fn infinite_arc_yields_infinite_flow() {
        let g = steady(&["s", "d"], &[(0, 1, Capacity::Infinite)]);
        let (value, flows) = max_flow(&g).unwrap();
        assert_eq!(value, Capacity::Infinite);
        let cut = min_cut(&g, &flows).unwrap();
        assert_eq!(cut.capacity, Capacity::Infinite);
    }

    #[test]
    fn cten_of_two_hop_path_carries_two_waves() {
        let n = net(
            &["s", "a", "d"],
            1,
            &[("s", "a", &[(0, 5)]), ("a", "d", &[(0, 5)])],
        );
        assert_eq!(max_flow_over_time(&n, 3).unwrap(), Capacity::Finite(10));
        // cross-check on the full expansion
        let ten = build_ten(&n, 3, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(max_flow(&ten).unwrap().0, Capacity::Finite(10));
    }

    #[test]
    fn all_zero_capacities_give_zero_flow() {
        let n = net(&["s", "a", "d"], 1, &[("s", "a", &[(0, 0)]), ("a", "d", &[(0, 0)])]);
        assert_eq!(max_flow_over_time(&n, 5).unwrap(), Capacity::Finite(0));
    }

    #[test]
    fn zero_horizon_pipeline() {
        // tau = 0 lets flow cross instantly at the single time step
        let n = net(&["s", "d"], 0, &[("s", "d", &[(0, 4)])]);
        assert_eq!(max_flow_over_time(&n, 0).unwrap(), Capacity::Finite(4));
        // with positive travel time nothing can arrive by T = 0
        let m = net(&["s", "d"], 1, &[("s", "d", &[(0, 4)])]);
        assert_eq!(max_flow_over_time(&m, 0).unwrap(), Capacity::Finite(0));
    }

    #[test]
    fn extracted_cut_function_maps_earliest_source_side_copy() {
        let n = net(&["s", "a", "d"], 1, &[("s", "a", &[(0, 5)]), ("a", "d", &[(0, 2)])]);
        let ten = build_ten(&n, 3, DEFAULT_NODE_BUDGET).unwrap();
        let (value, flows) = max_flow(&ten).unwrap();
        let cut = min_cut(&ten, &flows).unwrap();
        assert_eq!(cut.capacity, value);
        let phi = extract_cut_function(&cut, &ten).unwrap();
        assert_eq!(phi.value(n.source()), 0);
        assert_eq!(phi.value(n.sink()), 4);
        // the cut function prices the same set of crossing arcs
        let cost = crate::cuts::cut_cost(&n, 3, &phi).unwrap();
        assert_eq!(Capacity::Finite(cost), value);
    }

    #[test]
    fn min_cut_rejects_non_maximal_flows() {
        let g = steady(&["s", "d"], &[(0, 1, Capacity::Finite(3))]);
        let zero = vec![0];
        assert!(matches!(
            min_cut(&g, &zero),
            Err(Error::DualityViolation(_))
        ));
    }
}
