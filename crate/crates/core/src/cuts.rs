//! Cut functions on time-expanded networks.
//!
//! A finite cut assigns each node the earliest time at which its copies join
//! the source side; the sentinel `T + 1` means never. This module prices
//! such cuts directly from the piecewise capacities, computes the forbidden
//! assignment points that make a local shift cost-neutral, and runs the
//! normalization loop that moves any minimum cut onto the critical times
//! without changing its cost.

use std::collections::BTreeSet;

use crate::critical::breaktimes;
use crate::error::{Error, Result};
use crate::network::{TemporalNetwork, TimeStep};

/// A cut function: per-node switch times in `[0, T + 1]`, with the source
/// pinned to `0` and the sink to `T + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutFunction {
    values: Vec<TimeStep>,
}

impl CutFunction {
    pub fn new(net: &TemporalNetwork, horizon: TimeStep, values: Vec<TimeStep>) -> Result<Self> {
        Self::from_values(values, net.source(), net.sink(), horizon)
    }

    pub fn from_values(
        values: Vec<TimeStep>,
        source: usize,
        sink: usize,
        horizon: TimeStep,
    ) -> Result<Self> {
        if values[source] != 0 {
            return Err(Error::NotMonotone("source must map to 0".into()));
        }
        if values[sink] != horizon + 1 {
            return Err(Error::NotMonotone("sink must map to the sentinel".into()));
        }
        if values.iter().any(|&v| v > horizon + 1) {
            return Err(Error::NotMonotone("assignment past the sentinel".into()));
        }
        Ok(CutFunction { values })
    }

    pub fn value(&self, node: usize) -> TimeStep {
        self.values[node]
    }

    pub fn values(&self) -> &[TimeStep] {
        &self.values
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    /// The range of the assignment (the times the cut actually uses).
    pub fn range(&self) -> BTreeSet<TimeStep> {
        self.values.iter().copied().collect()
    }

    /// Nodes pinned to `0` or `T + 1`; these never take part in a shift.
    pub fn pinned_nodes(&self, horizon: TimeStep) -> BTreeSet<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == 0 || v == horizon + 1)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Cost of the cut: for each edge, the capacity of the expanded copies that
/// depart on or after the tail switches and arrive strictly before the head
/// does, within the horizon. Computed per piece, never per time step.
pub fn cut_cost(net: &TemporalNetwork, horizon: TimeStep, cut: &CutFunction) -> Result<u64> {
    let mut total: u64 = 0;
    for edge in net.edges() {
        let tau = net.edge_length(edge) as i128;
        let switch_tail = cut.value(edge.tail) as i128;
        let switch_head = cut.value(edge.head) as i128;
        let lo = switch_tail;
        let hi = (switch_head - tau - 1).min(horizon as i128 - tau);
        if hi < lo {
            continue;
        }
        let crossing = edge.capacity.sum_over_window(lo as TimeStep, hi as TimeStep)?;
        total = total
            .checked_add(crossing)
            .ok_or(Error::ArithmeticOverflow)?;
    }
    Ok(total)
}

fn offset_lengths(net: &TemporalNetwork) -> Vec<TimeStep> {
    if net.is_uniform_length() {
        vec![net.tau()]
    } else {
        net.distinct_lengths()
    }
}

/// The assignment values at which shifting `node` (as part of `shift_set`)
/// could change the cut cost: every breaktime and breaktime offset by an
/// edge length, plus the switch times (and their length-shifted twins) of
/// neighbours outside the shift set. Negative candidates are dropped since
/// no assignment can sit there.
pub fn forbidden_set(
    net: &TemporalNetwork,
    horizon: TimeStep,
    cut: &CutFunction,
    shift_set: &BTreeSet<usize>,
    node: usize,
) -> Result<BTreeSet<TimeStep>> {
    if !shift_set.contains(&node) {
        return Err(Error::NodeNotInC(node));
    }
    let mut forbidden: BTreeSet<TimeStep> = BTreeSet::new();
    let lengths = offset_lengths(net);
    for theta in breaktimes(net, horizon).iter() {
        forbidden.insert(theta);
        for &length in &lengths {
            if let Some(shifted) = theta.checked_add(length) {
                forbidden.insert(shifted);
            }
        }
    }
    let mut insert_signed = |candidate: i128| {
        if candidate >= 0 {
            forbidden.insert(candidate as TimeStep);
        }
    };
    for edge in net.edges() {
        let tau = net.edge_length(edge) as i128;
        if edge.tail == node && !shift_set.contains(&edge.head) {
            let neighbour = cut.value(edge.head) as i128;
            insert_signed(neighbour);
            insert_signed(neighbour - tau);
        }
        if edge.head == node && !shift_set.contains(&edge.tail) {
            let neighbour = cut.value(edge.tail) as i128;
            insert_signed(neighbour);
            insert_signed(neighbour + tau);
        }
    }
    Ok(forbidden)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Up,
    Down,
}

/// Moves every assignment in `shift_set` one step up or down, leaving the
/// rest untouched. Assignments at `0` or `T + 1` cannot move.
pub fn shift_cut(
    cut: &CutFunction,
    shift_set: &BTreeSet<usize>,
    direction: ShiftDirection,
    horizon: TimeStep,
) -> Result<CutFunction> {
    let mut values = cut.values().to_vec();
    for &node in shift_set {
        let v = values[node];
        if v == 0 || v == horizon + 1 {
            return Err(Error::ShiftOutOfRange(node));
        }
        values[node] = match direction {
            ShiftDirection::Up => v + 1,
            ShiftDirection::Down => v - 1,
        };
    }
    Ok(CutFunction { values })
}

/// The pinned-assignments graph: vertices are the network nodes plus one
/// vertex per breaktime; two vertices are linked when their times differ by
/// zero or an edge length. Components that avoid every breaktime are free to
/// shift.
#[derive(Debug, Clone)]
pub struct PinnedGraph {
    base_count: usize,
    thetas: Vec<TimeStep>,
    adjacency: Vec<Vec<usize>>,
}

impl PinnedGraph {
    pub fn base_count(&self) -> usize {
        self.base_count
    }

    pub fn breaktime_values(&self) -> &[TimeStep] {
        &self.thetas
    }

    pub fn vertex_count(&self) -> usize {
        self.base_count + self.thetas.len()
    }

    pub fn has_node_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn has_breaktime_edge(&self, node: usize, theta: TimeStep) -> bool {
        match self.thetas.iter().position(|&t| t == theta) {
            Some(i) => self.adjacency[node].contains(&(self.base_count + i)),
            None => false,
        }
    }

    /// Connected components, each sorted, in order of smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let total = self.vertex_count();
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn pinned_graph(net: &TemporalNetwork, horizon: TimeStep, cut: &CutFunction) -> PinnedGraph {
    let thetas: Vec<TimeStep> = breaktimes(net, horizon).iter().collect();
    let base_count = net.node_count();
    let mut offsets: BTreeSet<TimeStep> = offset_lengths(net).into_iter().collect();
    offsets.insert(0);
    let linked = |a: TimeStep, b: TimeStep| offsets.contains(&a.abs_diff(b));

    let total = base_count + thetas.len();
    let mut adjacency = vec![Vec::new(); total];
    let connect = |a: usize, b: usize, adjacency: &mut Vec<Vec<usize>>| {
        adjacency[a].push(b);
        adjacency[b].push(a);
    };
    for i in 0..base_count {
        for j in i + 1..base_count {
            if linked(cut.value(i), cut.value(j)) {
                connect(i, j, &mut adjacency);
            }
        }
        for (t, &theta) in thetas.iter().enumerate() {
            if linked(cut.value(i), theta) {
                connect(i, base_count + t, &mut adjacency);
            }
        }
    }
    PinnedGraph {
        base_count,
        thetas,
        adjacency,
    }
}

/// First connected component made only of unpinned network nodes and no
/// breaktime vertex, or `None` when every component touches one. In the
/// `None` case every assignment is a breaktime offset by a path's worth of
/// edge lengths, which is exactly membership in the critical times.
pub fn find_free_component(
    graph: &PinnedGraph,
    cut: &CutFunction,
    horizon: TimeStep,
) -> Option<BTreeSet<usize>> {
    let pinned = cut.pinned_nodes(horizon);
    graph
        .components()
        .into_iter()
        .find(|comp| {
            comp.iter()
                .all(|&v| v < graph.base_count() && !pinned.contains(&v))
        })
        .map(|comp| comp.into_iter().collect())
}

/// A normalized cut plus how many shifts it took.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub cut: CutFunction,
    pub iterations: usize,
}

/// Repeatedly shifts free components up until every assignment sits on a
/// critical time. Each shift must keep the cost exactly equal: an increase
/// contradicts the shift rule, a decrease contradicts the minimality of the
/// input. The assignment sum grows every round, so the loop ends within
/// `n * (T + 1)` iterations.
pub fn normalize_min_cut(
    net: &TemporalNetwork,
    horizon: TimeStep,
    cut: &CutFunction,
) -> Result<Normalized> {
    let target = cut_cost(net, horizon, cut)?;
    let mut current = cut.clone();
    let mut iterations = 0usize;
    let iteration_bound =
        u128::from(net.node_count() as u64) * (u128::from(horizon) + 1);
    loop {
        let graph = pinned_graph(net, horizon, &current);
        let Some(component) = find_free_component(&graph, &current, horizon) else {
            break;
        };
        for &node in &component {
            let forbidden = forbidden_set(net, horizon, &current, &component, node)?;
            assert!(
                !forbidden.contains(&current.value(node)),
                "free component contains a forbidden assignment"
            );
        }
        let shifted = shift_cut(&current, &component, ShiftDirection::Up, horizon)?;
        let cost = cut_cost(net, horizon, &shifted)?;
        if cost > target {
            return Err(Error::CostIncreased {
                from: target,
                to: cost,
            });
        }
        if cost < target {
            return Err(Error::NotAMinCut {
                from: target,
                to: cost,
            });
        }
        current = shifted;
        iterations += 1;
        assert!(
            iterations as u128 <= iteration_bound,
            "normalization exceeded the assignment-sum bound"
        );
    }
    Ok(Normalized {
        cut: current,
        iterations,
    })
}
