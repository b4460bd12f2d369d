//! Age-of-information dynamics under a multi-round seed schedule.
//!
//! Time is slotted: round `j` (1-based) seeds at `t_j = (j - 1) * delta + 1`
//! and information crosses an edge in its delay. Between arrivals a node's
//! age grows linearly; on arrival of fresher information it drops to the
//! age of that information.
//!
//! Two independent routes compute the same curves: [`simulate_oracle`]
//! passes messages over the graph slot by slot, while the trace functions
//! work from a [`DistanceMatrix`] only.

mod objective;
mod oracle;
mod trace;

pub use objective::{
    average_aoi, average_aoi_decomposed, eta, eta_alternate, peak_aoi, AverageAoi, AverageDecomposition, PeakAoi,
};
pub(crate) use objective::{doubled_area_unchecked, network_peak_unchecked};
pub use oracle::{simulate_oracle, simulate_oracle_resampled, AgeSeries};
pub use trace::{
    age_formula, discontinuities_linear, discontinuities_linear_instrumented, discontinuities_quadratic, omega_set,
    piecewise_trace, AoiTrace, Discontinuity, Piece, PiecewiseAoi,
};

use crate::error::ScheduleError;
use crate::graph::{DistanceMatrix, NodeId};

/// Age value; the freshest possible information has age 1.
pub type Age = u64;

/// Ordered seeding rounds spaced `delta` apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedSchedule {
    delta: u64,
    rounds: Vec<Vec<NodeId>>,
}

impl SeedSchedule {
    /// Rounds may hold several seeds that share the round's timestamp.
    pub fn new(delta: u64, rounds: Vec<Vec<NodeId>>) -> Result<Self, ScheduleError> {
        if delta == 0 {
            return Err(ScheduleError::ZeroDelta);
        }
        if rounds.is_empty() {
            return Err(ScheduleError::NoRounds);
        }
        if let Some(i) = rounds.iter().position(|r| r.is_empty()) {
            return Err(ScheduleError::EmptyRound { round: i + 1 });
        }
        Ok(SeedSchedule { delta, rounds })
    }

    /// One seed per round.
    pub fn single(delta: u64, seeds: &[NodeId]) -> Result<Self, ScheduleError> {
        Self::new(delta, seeds.iter().map(|&s| vec![s]).collect())
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// Number of rounds `k`.
    pub fn k(&self) -> usize {
        self.rounds.len()
    }

    pub fn rounds(&self) -> &[Vec<NodeId>] {
        &self.rounds
    }

    /// Seeds of round `j` (1-based).
    pub fn round(&self, j: usize) -> &[NodeId] {
        &self.rounds[j - 1]
    }

    /// `t_j = (j - 1) * delta + 1` for 1-based `j`.
    #[inline]
    pub fn timestamp(&self, j: usize) -> u64 {
        (j as u64 - 1) * self.delta + 1
    }

    /// `t_k`.
    pub fn last_seed_time(&self) -> u64 {
        self.timestamp(self.k())
    }

    /// Distinct nodes seeded anywhere in the schedule.
    pub fn seed_nodes(&self) -> Vec<NodeId> {
        let mut nodes: Vec<NodeId> = self.rounds.iter().flatten().copied().collect();
        nodes.sort_unstable();
        nodes.dedup();
        nodes
    }

    /// Distance from round `j`'s nearest seed to `v`.
    #[inline]
    pub fn round_distance(&self, dm: &DistanceMatrix, j: usize, v: NodeId) -> u64 {
        self.rounds[j - 1].iter().map(|&s| dm.get(s, v)).min().expect("rounds are non-empty")
    }

    /// Arrival times `t_j + dist(s_j, v)` for every round, in round order.
    pub fn arrivals(&self, dm: &DistanceMatrix, v: NodeId) -> Vec<u64> {
        (1..=self.k()).map(|j| self.timestamp(j) + self.round_distance(dm, j, v)).collect()
    }

    /// Fails if any seed is not a node of an `n`-node graph.
    pub fn check_nodes(&self, node_count: usize) -> Result<(), ScheduleError> {
        for (i, round) in self.rounds.iter().enumerate() {
            if let Some(&node) = round.iter().find(|&&s| s >= node_count) {
                return Err(ScheduleError::UnknownNode { round: i + 1, node, node_count });
            }
        }
        Ok(())
    }
}

/// Initial age at `t = 0`, shared or per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialAge {
    Uniform(Age),
    PerNode(Vec<Age>),
}

impl InitialAge {
    #[inline]
    pub fn at(&self, v: NodeId) -> Age {
        match self {
            InitialAge::Uniform(a) => *a,
            InitialAge::PerNode(ages) => ages[v],
        }
    }

    /// The shared value, if uniform.
    pub fn uniform(&self) -> Option<Age> {
        match self {
            InitialAge::Uniform(a) => Some(*a),
            InitialAge::PerNode(_) => None,
        }
    }

    /// Mean initial age over `n` nodes.
    pub fn mean(&self, n: usize) -> f64 {
        match self {
            InitialAge::Uniform(a) => *a as f64,
            InitialAge::PerNode(ages) => ages.iter().take(n).sum::<u64>() as f64 / n as f64,
        }
    }
}

/// Observation window `[0, end]` plus the initial ages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horizon {
    pub end: u64,
    pub initial: InitialAge,
}

impl Horizon {
    pub fn new(end: u64, initial: InitialAge) -> Self {
        Horizon { end, initial }
    }

    pub fn uniform(end: u64, a0: Age) -> Self {
        Horizon { end, initial: InitialAge::Uniform(a0) }
    }

    /// Checks `t_k <= T`, initial ages `>= 1`, and node ids.
    pub fn validate(&self, sched: &SeedSchedule, node_count: usize) -> Result<(), ScheduleError> {
        sched.check_nodes(node_count)?;
        let last = sched.last_seed_time();
        if self.end < last {
            return Err(ScheduleError::HorizonTooShort { horizon: self.end, last_seed_time: last });
        }
        match &self.initial {
            InitialAge::Uniform(a) if *a < 1 => Err(ScheduleError::InitialAgeBelowOne { node: 0, age: *a }),
            InitialAge::Uniform(_) => Ok(()),
            InitialAge::PerNode(ages) => {
                if ages.len() != node_count {
                    return Err(ScheduleError::InitialAgeLength { got: ages.len(), node_count });
                }
                match ages.iter().position(|&a| a < 1) {
                    Some(node) => Err(ScheduleError::InitialAgeBelowOne { node, age: ages[node] }),
                    None => Ok(()),
                }
            }
        }
    }
}
