//! Time expansion: the full per-step network and its condensed form.
//!
//! Both builders produce the same kind of static flow network. The full
//! expansion keeps one copy of every node per time step and is only viable
//! at oracle scale; the condensed expansion keeps one copy per interval of a
//! boundary set `A` and aggregates transmission capacities over each
//! departure window, which is what makes long horizons tractable.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::critical::CriticalTimeSet;
use crate::error::{Error, Result};
use crate::network::{Capacity, TemporalNetwork, TimeStep};

/// Default cap on expanded node count; guards the full expansion from
/// blowing up on long horizons.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Storage,
    Transmission,
}

/// A directed arc between expanded nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
    pub kind: ArcKind,
}

/// A steady-state flow network over copies `(base node, time label)`.
///
/// Node ids are `base * time_count + time_index`; arcs are stored in
/// construction order, which downstream solvers rely on for reproducible
/// traces.
#[derive(Debug, Clone)]
pub struct StaticFlowNetwork {
    base_names: Vec<String>,
    times: Vec<TimeStep>,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
    horizon: TimeStep,
}

impl StaticFlowNetwork {
    /// Assembles a network from parts; mostly useful for synthetic solver
    /// inputs. `times` must be sorted and non-empty.
    pub fn new(
        base_names: Vec<String>,
        times: Vec<TimeStep>,
        arcs: Vec<Arc>,
        source: usize,
        sink: usize,
        horizon: TimeStep,
    ) -> Self {
        debug_assert!(!times.is_empty());
        debug_assert!(times.windows(2).all(|w| w[0] < w[1]));
        let net = StaticFlowNetwork {
            base_names,
            times,
            arcs,
            source,
            sink,
            horizon,
        };
        debug_assert!(net.source < net.node_count() && net.sink < net.node_count());
        net
    }

    pub fn node_count(&self) -> usize {
        self.base_names.len() * self.times.len()
    }

    pub fn base_count(&self) -> usize {
        self.base_names.len()
    }

    pub fn time_count(&self) -> usize {
        self.times.len()
    }

    pub fn time_labels(&self) -> &[TimeStep] {
        &self.times
    }

    pub fn node_id(&self, base: usize, time_index: usize) -> usize {
        base * self.times.len() + time_index
    }

    pub fn base_of(&self, node: usize) -> usize {
        node / self.times.len()
    }

    pub fn time_index_of(&self, node: usize) -> usize {
        node % self.times.len()
    }

    pub fn time_of(&self, node: usize) -> TimeStep {
        self.times[self.time_index_of(node)]
    }

    pub fn base_name(&self, node: usize) -> &str {
        &self.base_names[self.base_of(node)]
    }

    pub fn base_label(&self, base: usize) -> &str {
        &self.base_names[base]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn horizon(&self) -> TimeStep {
        self.horizon
    }

    /// Serializable view with `(node, time)` labels; infinite capacities
    /// print as `"inf"`.
    pub fn export(&self) -> ExportedNetwork {
        let label = |id: usize| NodeLabel {
            node: self.base_name(id).to_string(),
            time: self.time_of(id),
        };
        ExportedNetwork {
            horizon: self.horizon,
            source: label(self.source),
            sink: label(self.sink),
            nodes: (0..self.node_count()).map(label).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ExportedArc {
                    from: label(a.tail),
                    to: label(a.head),
                    capacity: a.capacity,
                    kind: a.kind,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeLabel {
    pub node: String,
    pub time: TimeStep,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportedArc {
    pub from: NodeLabel,
    pub to: NodeLabel,
    pub capacity: Capacity,
    pub kind: ArcKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportedNetwork {
    pub horizon: TimeStep,
    pub source: NodeLabel,
    pub sink: NodeLabel,
    pub nodes: Vec<NodeLabel>,
    pub arcs: Vec<ExportedArc>,
}

/// Builds the full expansion: one node per `(base, t)` with `t` in
/// `[0, T]`, transmission arcs wherever the capacity is positive and the
/// arrival stays within the horizon, and infinite storage arcs forward in
/// time. Refuses to build past `node_budget` nodes.
pub fn build_ten(
    net: &TemporalNetwork,
    horizon: TimeStep,
    node_budget: u64,
) -> Result<StaticFlowNetwork> {
    let n = net.node_count() as u128;
    let needed = n * (u128::from(horizon) + 1);
    if needed > u128::from(node_budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.min(u128::from(u64::MAX)) as u64,
            budget: node_budget,
        });
    }

    let times: Vec<TimeStep> = (0..=horizon).collect();
    let k = times.len();
    let n = net.node_count();
    let mut arcs = Vec::new();
    for base in 0..n {
        for ti in 0..k - 1 {
            arcs.push(Arc {
                tail: base * k + ti,
                head: base * k + ti + 1,
                capacity: Capacity::Infinite,
                kind: ArcKind::Storage,
            });
        }
    }
    for edge in net.edges() {
        let tau = net.edge_length(edge);
        if tau > horizon {
            continue;
        }
        for t in 0..=horizon - tau {
            let value = edge.capacity.eval(t);
            if value > 0 {
                arcs.push(Arc {
                    tail: edge.tail * k + t as usize,
                    head: edge.head * k + (t + tau) as usize,
                    capacity: Capacity::Finite(value),
                    kind: ArcKind::Transmission,
                });
            }
        }
    }
    Ok(StaticFlowNetwork {
        base_names: net.node_names().to_vec(),
        times,
        arcs,
        source: net.source() * k,
        sink: net.sink() * k + k - 1,
        horizon,
    })
}

/// Builds the condensed expansion over the interval set `A`.
///
/// Interval `i` covers departure times `[t_i, t_{i+1} - 1]` (the last one
/// `[t_k, T]`). For each edge and departure interval, departures whose
/// arrival `t + tau` lands in arrival interval `j` are aggregated into one
/// arc carrying their summed capacity; departures arriving past the horizon
/// contribute nothing. Zero-capacity arcs are omitted.
pub fn build_cten(
    net: &TemporalNetwork,
    boundaries: &CriticalTimeSet,
    horizon: TimeStep,
) -> Result<StaticFlowNetwork> {
    let times = boundaries.times().to_vec();
    if times.first() != Some(&0)
        || times.last() != Some(&horizon)
        || times.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidIntervalSet { horizon });
    }
    let k = times.len();
    let n = net.node_count();
    // inclusive end of interval `i`
    let interval_end = |i: usize| -> TimeStep {
        if i + 1 < k {
            times[i + 1] - 1
        } else {
            horizon
        }
    };
    // index of the interval containing time `t`
    let interval_of = |t: TimeStep| -> usize { times.partition_point(|&b| b <= t) - 1 };

    let mut arcs = Vec::new();
    for base in 0..n {
        for ti in 0..k - 1 {
            arcs.push(Arc {
                tail: base * k + ti,
                head: base * k + ti + 1,
                capacity: Capacity::Infinite,
                kind: ArcKind::Storage,
            });
        }
    }
    for edge in net.edges() {
        let tau = net.edge_length(edge);
        if tau > horizon {
            continue;
        }
        let last_departure = horizon - tau;
        for di in 0..k {
            let dep_lo = times[di];
            if dep_lo > last_departure {
                break;
            }
            let dep_hi = interval_end(di).min(last_departure);
            let mut ai = interval_of(dep_lo + tau);
            while ai < k && times[ai] <= dep_hi + tau {
                // departures out of interval `di` whose arrival lands in `ai`;
                // every visited arrival interval ends at or after `tau`
                let arr_end = interval_end(ai);
                debug_assert!(arr_end >= tau);
                let lo = dep_lo.max(times[ai].saturating_sub(tau));
                let hi = dep_hi.min(arr_end - tau);
                if lo <= hi {
                    let capacity = edge.capacity.sum_over_window(lo, hi)?;
                    if capacity > 0 {
                        arcs.push(Arc {
                            tail: edge.tail * k + di,
                            head: edge.head * k + ai,
                            capacity: Capacity::Finite(capacity),
                            kind: ArcKind::Transmission,
                        });
                    }
                }
                ai += 1;
            }
        }
    }
    Ok(StaticFlowNetwork {
        base_names: net.node_names().to_vec(),
        times,
        arcs,
        source: net.source() * k,
        sink: net.sink() * k + k - 1,
        horizon,
    })
}

/// Node and arc counts of a condensed expansion together with the bounds
/// they must satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct SizeReport {
    pub node_count: usize,
    pub storage_arc_count: usize,
    pub transmission_arc_count: usize,
    pub arc_count: usize,
    pub max_arcs_per_edge_pair: usize,
    pub interval_count: usize,
    pub node_bound: usize,
    pub per_pair_bound: usize,
    pub total_arc_bound: usize,
}

/// Counts nodes and arcs of a condensed expansion and checks them against
/// the structural bounds: exactly `n * |A|` nodes, at most `n * |A|` storage
/// arcs, at most `5 * |A|` transmission arcs per edge pair. Doubles as a
/// self-check; a violation means the builder is buggy.
pub fn cten_size_report(
    expanded: &StaticFlowNetwork,
    net: &TemporalNetwork,
    boundaries: &CriticalTimeSet,
) -> Result<SizeReport> {
    let p = boundaries.len();
    let n = net.node_count();
    let m = net.edge_count();
    let node_bound = n * p;
    let per_pair_bound = 5 * p;
    let total_arc_bound = n * p + 5 * m * p;

    let node_count = expanded.node_count();
    if node_count != node_bound {
        return Err(Error::BoundViolation(format!(
            "expected exactly {node_bound} nodes, found {node_count}"
        )));
    }
    let storage_arc_count = expanded
        .arcs()
        .iter()
        .filter(|a| a.kind == ArcKind::Storage)
        .count();
    if storage_arc_count > node_bound {
        return Err(Error::BoundViolation(format!(
            "{storage_arc_count} storage arcs exceed the node count {node_bound}"
        )));
    }
    let mut per_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for arc in expanded.arcs() {
        if arc.kind == ArcKind::Transmission {
            *per_pair
                .entry((expanded.base_of(arc.tail), expanded.base_of(arc.head)))
                .or_insert(0) += 1;
        }
    }
    let max_arcs_per_edge_pair = per_pair.values().copied().max().unwrap_or(0);
    if max_arcs_per_edge_pair > per_pair_bound {
        return Err(Error::BoundViolation(format!(
            "{max_arcs_per_edge_pair} transmission arcs on one edge pair exceed {per_pair_bound}"
        )));
    }
    let transmission_arc_count: usize = per_pair.values().sum();
    let arc_count = expanded.arcs().len();
    if arc_count > total_arc_bound {
        return Err(Error::BoundViolation(format!(
            "{arc_count} arcs exceed the total bound {total_arc_bound}"
        )));
    }
    Ok(SizeReport {
        node_count,
        storage_arc_count,
        transmission_arc_count,
        arc_count,
        max_arcs_per_edge_pair,
        interval_count: p,
        node_bound,
        per_pair_bound,
        total_arc_bound,
    })
}

/// True when two expansions describe the same capacitated graph: same
/// labelled nodes, same terminals, and the same multiset of labelled arcs.
pub fn isomorphic(a: &StaticFlowNetwork, b: &StaticFlowNetwork) -> bool {
    let labels = |net: &StaticFlowNetwork| -> Vec<(String, TimeStep)> {
        let mut v: Vec<_> = (0..net.node_count())
            .map(|id| (net.base_name(id).to_string(), net.time_of(id)))
            .collect();
        v.sort();
        v
    };
    let arc_labels = |net: &StaticFlowNetwork| {
        let mut v: Vec<_> = net
            .arcs()
            .iter()
            .map(|arc| {
                (
                    net.base_name(arc.tail).to_string(),
                    net.time_of(arc.tail),
                    net.base_name(arc.head).to_string(),
                    net.time_of(arc.head),
                    arc.capacity,
                    arc.kind,
                )
            })
            .collect();
        v.sort();
        v
    };
    let terminal = |net: &StaticFlowNetwork, id: usize| (net.base_name(id).to_string(), net.time_of(id));
    labels(a) == labels(b)
        && terminal(a, a.source()) == terminal(b, b.source())
        && terminal(a, a.sink()) == terminal(b, b.sink())
        && arc_labels(a) == arc_labels(b)
}
