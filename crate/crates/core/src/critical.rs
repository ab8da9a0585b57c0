//! Breaktimes and critical times.
//!
//! The breaktime set collects every instant at which some edge capacity
//! changes value, plus `0`, `T`, and the sentinel `T + 1`. The critical-time
//! set offsets each breaktime by every multiple of the travel time up to the
//! node count, in both directions; these are exactly the instants the
//! condensed expansion has to keep as interval boundaries to preserve the
//! min cut.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::network::{TemporalNetwork, TimeStep};

/// Largest number of distinct edge lengths accepted by
/// [`generalized_critical_times`]; the candidate set grows as
/// `(2n+1)^|lengths|`.
pub const DEFAULT_LENGTH_SET_BOUND: usize = 3;

/// All times at which some capacity changes, together with `0`, the horizon
/// and the sentinel one past it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreaktimeSet {
    times: BTreeSet<TimeStep>,
    horizon: TimeStep,
}

impl BreaktimeSet {
    pub fn iter(&self) -> impl Iterator<Item = TimeStep> + '_ {
        self.times.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn contains(&self, t: TimeStep) -> bool {
        self.times.contains(&t)
    }

    pub fn horizon(&self) -> TimeStep {
        self.horizon
    }
}

/// A sorted set of interval boundaries within `[0, T]`, always containing
/// `0` and `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalTimeSet {
    times: Vec<TimeStep>,
}

impl CriticalTimeSet {
    /// Builds from an arbitrary set of times; must contain `0` and the
    /// horizon and nothing beyond it.
    pub fn new(times: impl IntoIterator<Item = TimeStep>, horizon: TimeStep) -> Result<Self> {
        let set: BTreeSet<TimeStep> = times.into_iter().collect();
        if !set.contains(&0) || !set.contains(&horizon) || set.iter().any(|&t| t > horizon) {
            return Err(Error::InvalidIntervalSet { horizon });
        }
        Ok(CriticalTimeSet {
            times: set.into_iter().collect(),
        })
    }

    /// Every time in `[0, T]`; condensing over this set changes nothing.
    pub fn full(horizon: TimeStep) -> Self {
        CriticalTimeSet {
            times: (0..=horizon).collect(),
        }
    }

    pub fn times(&self) -> &[TimeStep] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn contains(&self, t: TimeStep) -> bool {
        self.times.binary_search(&t).is_ok()
    }
}

/// Scans the canonical capacity pieces for change times in `[1, T]` and adds
/// `0`, `T`, `T + 1`.
pub fn breaktimes(net: &TemporalNetwork, horizon: TimeStep) -> BreaktimeSet {
    let mut times = BTreeSet::new();
    times.insert(0);
    times.insert(horizon);
    times.insert(horizon + 1);
    for edge in net.edges() {
        // in canonical form every non-initial piece boundary is a change
        for piece in &edge.capacity.pieces()[1..] {
            if piece.from_time <= horizon {
                times.insert(piece.from_time);
            }
        }
    }
    BreaktimeSet { times, horizon }
}

/// Offsets every breaktime by `l * tau` for `l` in `[0, n]`, both
/// directions, keeping what lands in `[0, T]`.
pub fn critical_times(net: &TemporalNetwork, horizon: TimeStep) -> CriticalTimeSet {
    let bt = breaktimes(net, horizon);
    let n = net.node_count() as i128;
    let tau = net.tau() as i128;
    let mut times: BTreeSet<TimeStep> = BTreeSet::new();
    times.insert(0);
    times.insert(horizon);
    for theta in bt.iter() {
        let theta = theta as i128;
        for l in 0..=n {
            for candidate in [theta - l * tau, theta + l * tau] {
                if (0..=horizon as i128).contains(&candidate) {
                    times.insert(candidate as TimeStep);
                }
            }
        }
    }
    CriticalTimeSet {
        times: times.into_iter().collect(),
    }
}

/// The multi-length variant: offsets every breaktime by every signed
/// combination `sum(a_l * l)` with coefficients in `[-n, n]`, one per
/// distinct length. Exponential in the number of lengths, hence the bound.
pub fn generalized_critical_times(
    net: &TemporalNetwork,
    lengths: &[TimeStep],
    horizon: TimeStep,
    max_lengths: usize,
) -> Result<CriticalTimeSet> {
    let gamma: BTreeSet<TimeStep> = lengths.iter().copied().collect();
    if gamma.len() > max_lengths {
        return Err(Error::TooManyDistinctLengths {
            got: gamma.len(),
            bound: max_lengths,
        });
    }
    let n = net.node_count() as i128;

    // distinct values of sum(a_l * l) over the coefficient grid
    let mut offsets: BTreeSet<i128> = BTreeSet::new();
    offsets.insert(0);
    for &length in &gamma {
        let length = length as i128;
        let mut extended = BTreeSet::new();
        for &base in &offsets {
            for a in -n..=n {
                extended.insert(base + a * length);
            }
        }
        offsets = extended;
    }

    let bt = breaktimes(net, horizon);
    let mut times: BTreeSet<TimeStep> = BTreeSet::new();
    times.insert(0);
    times.insert(horizon);
    for theta in bt.iter() {
        let theta = theta as i128;
        for &offset in &offsets {
            let candidate = theta + offset;
            if (0..=horizon as i128).contains(&candidate) {
                times.insert(candidate as TimeStep);
            }
        }
    }
    Ok(CriticalTimeSet {
        times: times.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::testutil::net;

    fn set(times: &BreaktimeSet) -> Vec<TimeStep> {
        times.iter().collect()
    }

    #[test]
    fn breaktimes_all_constant() {
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5)])]);
        assert_eq!(set(&breaktimes(&n, 10)), vec![0, 10, 11]);
    }

    #[test]
    fn breaktimes_single_change() {
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5), (4, 0)])]);
        assert_eq!(set(&breaktimes(&n, 10)), vec![0, 4, 10, 11]);
        // cross-check against a direct scan of u(t) != u(t-1)
        let cap = &n.edges()[0].capacity;
        let scanned: Vec<TimeStep> = (1..=10).filter(|&t| cap.eval(t) != cap.eval(t - 1)).collect();
        assert_eq!(scanned, vec![4]);
    }

    #[test]
    fn breaktimes_ignore_changes_past_horizon() {
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5), (99, 0)])]);
        assert_eq!(set(&breaktimes(&n, 10)), vec![0, 10, 11]);
    }

    #[test]
    fn critical_times_all_constant_two_nodes() {
        // offsets of {0, 10, 11} by l in {0,1,2}, clamped to [0,10]
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5)])]);
        assert_eq!(critical_times(&n, 10).times(), &[0, 1, 2, 8, 9, 10]);
    }

    #[test]
    fn critical_times_single_change_matches_offset_ladder() {
        // one change at t' = 50, large horizon: expect {0, T} plus the
        // ladder t' - n*tau ... t' + n*tau
        let n = net(
            &["s", "a", "d"],
            2,
            &[
                ("s", "a", &[(0, 1), (50, 2)]),
                ("a", "d", &[(0, 1)]),
            ],
        );
        let horizon = 100;
        let got = critical_times(&n, horizon);
        let mut expected: BTreeSet<TimeStep> = [0, horizon].into();
        for l in 0..=3i64 {
            expected.insert((50 - 2 * l) as TimeStep);
            expected.insert((50 + 2 * l) as TimeStep);
        }
        // the horizon breaks {100, 101} also produce in-range offsets
        for theta in [100i64, 101] {
            for l in 0..=3i64 {
                for c in [theta - 2 * l, theta + 2 * l] {
                    if (0..=100).contains(&c) {
                        expected.insert(c as TimeStep);
                    }
                }
            }
        }
        // and so does theta = 0
        for l in 0..=3i64 {
            expected.insert((2 * l) as TimeStep);
        }
        let expected: Vec<TimeStep> = expected.into_iter().collect();
        assert_eq!(got.times(), expected.as_slice());
    }

    #[test]
    fn critical_times_tau_zero_collapses_to_breaktimes() {
        let n = net(&["s", "d"], 0, &[("s", "d", &[(0, 5), (4, 0)])]);
        assert_eq!(critical_times(&n, 10).times(), &[0, 4, 10]);
    }

    #[test]
    fn generalized_reduces_to_uniform_for_singleton() {
        let n = net(&["s", "a", "d"], 2, &[
            ("s", "a", &[(0, 5), (7, 1)]),
            ("a", "d", &[(0, 3)]),
        ]);
        let uniform = critical_times(&n, 20);
        let general =
            generalized_critical_times(&n, &[2], 20, DEFAULT_LENGTH_SET_BOUND).unwrap();
        assert_eq!(uniform, general);
    }

    #[test]
    fn generalized_two_lengths_enumerates_grid() {
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5), (10, 0)])]);
        let got = generalized_critical_times(&n, &[1, 2], 20, DEFAULT_LENGTH_SET_BOUND).unwrap();
        let mut expected: BTreeSet<i64> = BTreeSet::new();
        expected.insert(0);
        expected.insert(20);
        for theta in [0i64, 10, 20, 21] {
            for a1 in -2i64..=2 {
                for a2 in -2i64..=2 {
                    let c = theta + a1 + 2 * a2;
                    if (0..=20).contains(&c) {
                        expected.insert(c);
                    }
                }
            }
        }
        let expected: Vec<TimeStep> = expected.into_iter().map(|t| t as TimeStep).collect();
        assert_eq!(got.times(), expected.as_slice());
    }

    #[test]
    fn generalized_empty_length_set_is_breaktimes() {
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5), (4, 0)])]);
        let got = generalized_critical_times(&n, &[], 10, DEFAULT_LENGTH_SET_BOUND).unwrap();
        assert_eq!(got.times(), &[0, 4, 10]);
    }

    #[test]
    fn generalized_rejects_too_many_lengths() {
        let n = net(&["s", "d"], 1, &[("s", "d", &[(0, 5)])]);
        assert!(matches!(
            generalized_critical_times(&n, &[1, 2, 3, 4], 10, 3),
            Err(Error::TooManyDistinctLengths { got: 4, bound: 3 })
        ));
    }

    #[test]
    fn critical_time_bounds_hold() {
        let n = net(
            &["s", "a", "b", "d"],
            3,
            &[
                ("s", "a", &[(0, 2), (5, 0), (9, 4)]),
                ("a", "b", &[(0, 1)]),
                ("b", "d", &[(0, 3), (12, 1)]),
            ],
        );
        let horizon = 30;
        let bt = breaktimes(&n, horizon);
        let crit = critical_times(&n, horizon);
        assert!(bt.len() <= n.mu() + 3);
        assert!(crit.len() <= (2 * n.node_count() + 1) * bt.len());
        assert!(crit.contains(0) && crit.contains(horizon));
        assert!(crit.times().iter().all(|&t| t <= horizon));
    }

    #[test]
    fn interval_set_validation() {
        assert!(CriticalTimeSet::new([0, 3, 5], 5).is_ok());
        assert!(matches!(
            CriticalTimeSet::new([0, 3], 5),
            Err(Error::InvalidIntervalSet { horizon: 5 })
        ));
        assert!(matches!(
            CriticalTimeSet::new([0, 5, 6], 5),
            Err(Error::InvalidIntervalSet { horizon: 5 })
        ));
        assert_eq!(CriticalTimeSet::full(3).times(), &[0, 1, 2, 3]);
    }
}
