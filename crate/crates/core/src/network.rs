//! Temporal networks with piecewise constant edge capacities.
//!
//! A temporal network is a directed graph whose edges share a static travel
//! time and carry a capacity that changes at a finite set of instants. All
//! quantities are exact non-negative integers; arithmetic is overflow-checked
//! and never rounds.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Discrete time unit. The horizon `T` and all piece boundaries use this
/// type; the only value ever seen outside `[0, T]` is the cut-function
/// sentinel `T + 1`.
pub type TimeStep = u64;

/// An arc capacity: a non-negative integer or the distinguished infinity
/// used by storage arcs. The derived ordering puts `Infinite` above every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

impl Capacity {
    pub fn is_finite(self) -> bool {
        matches!(self, Capacity::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Capacity::Finite(v) => Some(v),
            Capacity::Infinite => None,
        }
    }

    /// Overflow-checked addition; anything plus `Infinite` is `Infinite`.
    pub fn checked_add(self, rhs: Capacity) -> Result<Capacity> {
        match (self, rhs) {
            (Capacity::Finite(a), Capacity::Finite(b)) => a
                .checked_add(b)
                .map(Capacity::Finite)
                .ok_or(Error::ArithmeticOverflow),
            _ => Ok(Capacity::Infinite),
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(v) => write!(f, "{v}"),
            Capacity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Capacity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Capacity::Finite(v) => serializer.serialize_u64(*v),
            Capacity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Capacity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(v) => Ok(Capacity::Finite(v)),
            Repr::Text(s) if s == "inf" => Ok(Capacity::Infinite),
            Repr::Text(s) => Err(serde::de::Error::custom(format!(
                "capacity must be a non-negative integer or \"inf\", got `{s}`"
            ))),
        }
    }
}

/// One constant piece of a capacity function: `value` holds from
/// `from_time` until the next piece starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub from_time: TimeStep,
    pub value: u64,
}

/// A piecewise constant function on `t >= 0`, stored in canonical form:
/// pieces sorted strictly ascending, the first starting at 0, adjacent
/// pieces carrying distinct values, the last extending to infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseConstant {
    pieces: Vec<Piece>,
}

impl PiecewiseConstant {
    /// A function that is `value` everywhere.
    pub fn constant(value: u64) -> Self {
        PiecewiseConstant {
            pieces: vec![Piece {
                from_time: 0,
                value,
            }],
        }
    }

    /// Builds from `(from_time, value)` pairs that must already be in
    /// canonical form.
    pub fn new(pieces: impl IntoIterator<Item = (TimeStep, u64)>) -> Result<Self> {
        let (f, repaired) = Self::canonical_from(pieces, "", "")?;
        if repaired {
            return Err(Error::NonCanonicalPieces {
                from: String::new(),
                to: String::new(),
                reason: "adjacent pieces carry equal values".into(),
            });
        }
        Ok(f)
    }

    /// Builds from pairs, repairing adjacent equal values by merging.
    /// Returns whether a repair happened. Ordering violations and a missing
    /// initial piece are not repairable.
    pub fn canonical_from(
        pieces: impl IntoIterator<Item = (TimeStep, u64)>,
        edge_from: &str,
        edge_to: &str,
    ) -> Result<(Self, bool)> {
        let err = |reason: &str| Error::NonCanonicalPieces {
            from: edge_from.to_string(),
            to: edge_to.to_string(),
            reason: reason.to_string(),
        };
        let mut out: Vec<Piece> = Vec::new();
        let mut repaired = false;
        for (from_time, value) in pieces {
            match out.last() {
                None => {
                    if from_time != 0 {
                        return Err(err("first piece must start at time 0"));
                    }
                    out.push(Piece { from_time, value });
                }
                Some(last) => {
                    if from_time <= last.from_time {
                        return Err(err("piece start times must be strictly increasing"));
                    }
                    if last.value == value {
                        repaired = true; // merge: the new piece adds no change
                    } else {
                        out.push(Piece { from_time, value });
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(err("capacity function has no pieces"));
        }
        Ok((PiecewiseConstant { pieces: out }, repaired))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Number of constant pieces (the per-edge size parameter).
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Value at time `t`. A piece owns the times from its `from_time` up to
    /// (not including) the next piece's `from_time`.
    pub fn eval(&self, t: TimeStep) -> u64 {
        match self.pieces.binary_search_by_key(&t, |p| p.from_time) {
            Ok(i) => self.pieces[i].value,
            Err(i) => self.pieces[i - 1].value, // i >= 1 since the first piece starts at 0
        }
    }

    /// Sum of the function over the integer window `[lo, hi]`, computed per
    /// piece rather than per time step. An inverted window is empty.
    pub fn sum_over_window(&self, lo: TimeStep, hi: TimeStep) -> Result<u64> {
        if lo > hi {
            return Ok(0);
        }
        let mut total: u64 = 0;
        for (idx, piece) in self.pieces.iter().enumerate() {
            if piece.from_time > hi {
                break;
            }
            let start = piece.from_time.max(lo);
            let end = match self.pieces.get(idx + 1) {
                Some(next) => (next.from_time - 1).min(hi),
                None => hi,
            };
            if start > end {
                continue;
            }
            let contrib = u128::from(piece.value) * u128::from(end - start + 1);
            let sum = u128::from(total) + contrib;
            if sum > u128::from(u64::MAX) {
                return Err(Error::ArithmeticOverflow);
            }
            total = sum as u64;
        }
        Ok(total)
    }
}

/// A directed edge with its capacity function. `length` overrides the
/// network-wide travel time when set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub capacity: PiecewiseConstant,
    pub length: Option<TimeStep>,
}

/// A validated temporal network: distinct named nodes, simple directed
/// edges, a uniform travel time `tau` (optionally overridden per edge), and
/// designated source and sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalNetwork {
    node_names: Vec<String>,
    edges: Vec<Edge>,
    tau: TimeStep,
    source: usize,
    sink: usize,
}

impl TemporalNetwork {
    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total piece count across all edges.
    pub fn mu(&self) -> usize {
        self.edges.iter().map(|e| e.capacity.piece_count()).sum()
    }

    pub fn tau(&self) -> TimeStep {
        self.tau
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    pub fn node_name(&self, index: usize) -> &str {
        &self.node_names[index]
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.node_names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Travel time of an edge: its override or the network-wide `tau`.
    pub fn edge_length(&self, edge: &Edge) -> TimeStep {
        edge.length.unwrap_or(self.tau)
    }

    /// True when every edge travels in exactly `tau` steps.
    pub fn is_uniform_length(&self) -> bool {
        self.edges.iter().all(|e| self.edge_length(e) == self.tau)
    }

    /// Sorted distinct travel times present in the network.
    pub fn distinct_lengths(&self) -> Vec<TimeStep> {
        let mut lengths: Vec<TimeStep> = self.edges.iter().map(|e| self.edge_length(e)).collect();
        if lengths.is_empty() {
            lengths.push(self.tau);
        }
        lengths.sort_unstable();
        lengths.dedup();
        lengths
    }

    /// The serializable form, in the canonical file schema.
    pub fn to_raw(&self) -> RawNetwork {
        RawNetwork {
            nodes: self.node_names.clone(),
            source: self.node_names[self.source].clone(),
            sink: self.node_names[self.sink].clone(),
            tau: self.tau as i64,
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    from: self.node_names[e.tail].clone(),
                    to: self.node_names[e.head].clone(),
                    capacity: e
                        .capacity
                        .pieces()
                        .iter()
                        .map(|p| RawPiece {
                            from_time: p.from_time as i64,
                            value: p.value as i64,
                        })
                        .collect(),
                    length: e.length.map(|l| l as i64),
                })
                .collect(),
        }
    }
}

/// The canonical JSON file schema. Field values are raw signed integers so
/// that validation, not deserialization, reports negative inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawNetwork {
    pub nodes: Vec<String>,
    pub source: String,
    pub sink: String,
    pub tau: i64,
    pub edges: Vec<RawEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub from: String,
    pub to: String,
    pub capacity: Vec<RawPiece>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPiece {
    pub from_time: i64,
    pub value: i64,
}

impl RawNetwork {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serialization cannot fail")
    }
}

/// A validated network together with any repairs applied on the way in.
#[derive(Debug, Clone)]
pub struct Validated {
    pub network: TemporalNetwork,
    pub warnings: Vec<String>,
}

fn non_negative(field: &str, value: i64) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::NegativeValue {
        field: field.to_string(),
        value,
    })
}

/// Checks a raw network and produces the canonical in-memory form.
///
/// Structural defects (duplicate edges, self loops, unknown names, negative
/// numbers) are errors. Capacity functions with redundant pieces are merged
/// to canonical form and reported as warnings.
pub fn validate_network(raw: &RawNetwork) -> Result<Validated> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in raw.nodes.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::DuplicateNode(name.clone()));
        }
    }
    let lookup = |name: &str| -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    };
    let source = lookup(&raw.source)?;
    let sink = lookup(&raw.sink)?;
    if source == sink {
        return Err(Error::SourceEqualsSink(raw.source.clone()));
    }
    let tau = non_negative("tau", raw.tau)?;

    let mut warnings = Vec::new();
    let mut seen = HashMap::new();
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        let tail = lookup(&e.from)?;
        let head = lookup(&e.to)?;
        if tail == head {
            return Err(Error::SelfLoop(e.from.clone()));
        }
        if seen.insert((tail, head), ()).is_some() {
            return Err(Error::DuplicateEdge {
                from: e.from.clone(),
                to: e.to.clone(),
            });
        }
        let mut pairs = Vec::with_capacity(e.capacity.len());
        for p in &e.capacity {
            pairs.push((
                non_negative("capacity.from_time", p.from_time)?,
                non_negative("capacity.value", p.value)?,
            ));
        }
        let (capacity, repaired) = PiecewiseConstant::canonical_from(pairs, &e.from, &e.to)?;
        if repaired {
            warnings.push(format!(
                "edge {} -> {}: merged pieces with equal adjacent values",
                e.from, e.to
            ));
        }
        let length = e
            .length
            .map(|l| non_negative("length", l))
            .transpose()?;
        edges.push(Edge {
            tail,
            head,
            capacity,
            length,
        });
    }

    let n = raw.nodes.len();
    debug_assert!(edges.len() < n * n, "simple digraph cannot exceed n(n-1) edges");

    Ok(Validated {
        network: TemporalNetwork {
            node_names: raw.nodes.clone(),
            edges,
            tau,
            source,
            sink,
        },
        warnings,
    })
}
