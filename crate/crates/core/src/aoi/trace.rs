use super::{Age, Horizon, SeedSchedule};
use crate::graph::{DistanceMatrix, NodeId};

/// A point where a node's age drops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discontinuity {
    /// 1-based round whose information causes the drop.
    pub round: usize,
    /// Seeding time of that round.
    pub seed_time: u64,
    /// Arrival time at the node.
    pub drop_time: u64,
    /// Age right after the drop, `1 + dist`.
    pub post_drop_age: Age,
}

/// All discontinuities of one node, in increasing drop time.
///
/// Traces ignore the horizon; evaluators truncate at `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AoiTrace {
    pub node: NodeId,
    pub discontinuities: Vec<Discontinuity>,
}

impl AoiTrace {
    /// Number of discontinuities.
    pub fn k_i(&self) -> usize {
        self.discontinuities.len()
    }

    pub fn rounds(&self) -> Vec<usize> {
        self.discontinuities.iter().map(|d| d.round).collect()
    }

    /// Discontinuities with drop time at most `end`.
    pub fn within(&self, end: u64) -> &[Discontinuity] {
        let cut = self.discontinuities.partition_point(|d| d.drop_time <= end);
        &self.discontinuities[..cut]
    }
}

fn record(sched: &SeedSchedule, dm: &DistanceMatrix, v: NodeId, round: usize) -> Discontinuity {
    let seed_time = sched.timestamp(round);
    let dist = sched.round_distance(dm, round, v);
    Discontinuity { round, seed_time, drop_time: seed_time + dist, post_drop_age: 1 + dist }
}

/// Pairwise dominance filter: round `p` survives unless a later round
/// arrives no later than it does. `O(k^2)`.
pub fn discontinuities_quadratic(v: NodeId, sched: &SeedSchedule, dm: &DistanceMatrix) -> AoiTrace {
    let arrivals = sched.arrivals(dm, v);
    let k = arrivals.len();
    let discontinuities = (0..k)
        .filter(|&p| !(p + 1..k).any(|q| arrivals[q] <= arrivals[p]))
        .map(|p| record(sched, dm, v, p + 1))
        .collect();
    AoiTrace { node: v, discontinuities }
}

/// Backward sweep keeping a round iff it arrives strictly before the last
/// kept one. `O(k)`.
pub fn discontinuities_linear(v: NodeId, sched: &SeedSchedule, dm: &DistanceMatrix) -> AoiTrace {
    discontinuities_linear_instrumented(v, sched, dm).0
}

/// [`discontinuities_linear`] plus the number of elementary stack
/// operations (pops, comparisons, pushes) it performed.
pub fn discontinuities_linear_instrumented(v: NodeId, sched: &SeedSchedule, dm: &DistanceMatrix) -> (AoiTrace, usize) {
    let mut candidates: Vec<usize> = (1..=sched.k()).collect();
    let mut kept: Vec<Discontinuity> = Vec::new();
    let mut ops = 0;
    while let Some(round) = candidates.pop() {
        ops += 1;
        let d = record(sched, dm, v, round);
        let fresher = match kept.last() {
            None => true,
            Some(up) => {
                ops += 1;
                d.drop_time < up.drop_time
            }
        };
        if fresher {
            ops += 1;
            kept.push(d);
        }
    }
    kept.reverse();
    (AoiTrace { node: v, discontinuities: kept }, ops)
}

/// Age of `v` at integer time `t`, straight from arrival times.
pub fn age_formula(v: NodeId, t: u64, sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> Age {
    (1..=sched.k())
        .filter(|&j| sched.timestamp(j) + sched.round_distance(dm, j, v) <= t)
        .map(|j| 1 + t - sched.timestamp(j))
        .fold(h.initial.at(v) + t, Age::min)
}

/// Rounds whose information reaches `v` exactly at `t` and is at least as
/// fresh as `prev_age`, the age at `t - 1`.
pub fn omega_set(v: NodeId, t: u64, sched: &SeedSchedule, dm: &DistanceMatrix, prev_age: Age) -> Vec<usize> {
    (1..=sched.k())
        .filter(|&j| {
            let tj = sched.timestamp(j);
            tj <= t && t - tj == sched.round_distance(dm, j, v) && 1 + t - tj <= prev_age
        })
        .collect()
}

/// A linear piece: age is `start_age + (t - start)` on `[start, end)`, and
/// also at `end` for the final piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Piece {
    pub start: u64,
    pub end: u64,
    pub start_age: Age,
}

impl Piece {
    /// Value approached at the piece's right end.
    pub fn end_age(&self) -> Age {
        self.start_age + (self.end - self.start)
    }

    /// Twice the area under the piece.
    pub fn doubled_area(&self) -> u128 {
        let len = (self.end - self.start) as u128;
        (2 * self.start_age as u128 + len) * len
    }
}

/// Piecewise-linear age curve of one node on `[0, T]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAoi {
    pub trace: AoiTrace,
    pub pieces: Vec<Piece>,
}

impl PiecewiseAoi {
    pub fn horizon(&self) -> u64 {
        self.pieces.last().expect("at least one piece").end
    }

    fn piece_at(&self, t: f64) -> &Piece {
        let idx = self.pieces.partition_point(|p| p.start as f64 <= t);
        &self.pieces[idx.saturating_sub(1)]
    }

    /// Age at real time `t` in `[0, T]`.
    pub fn eval(&self, t: f64) -> f64 {
        let p = self.piece_at(t);
        p.start_age as f64 + (t - p.start as f64)
    }

    /// Age at integer time `t` in `[0, T]`.
    pub fn age_at(&self, t: u64) -> Age {
        let idx = self.pieces.partition_point(|p| p.start <= t);
        let p = &self.pieces[idx.saturating_sub(1)];
        p.start_age + (t - p.start)
    }

    /// Supremum over `[0, T]`, counting left limits at drops.
    pub fn peak(&self) -> Age {
        self.pieces.iter().map(Piece::end_age).max().expect("at least one piece")
    }

    /// Twice the integral of the age over `[0, T]`.
    pub fn doubled_area(&self) -> u128 {
        self.pieces.iter().map(Piece::doubled_area).sum()
    }

    /// Time-average over `[0, T]`.
    pub fn average(&self) -> f64 {
        self.doubled_area() as f64 / (2 * self.horizon()) as f64
    }
}

/// Builds the piecewise curve of `v` truncated at `h.end`.
pub fn piecewise_trace(v: NodeId, sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> PiecewiseAoi {
    let trace = discontinuities_linear(v, sched, dm);
    let end = h.end;
    let mut pieces = Vec::with_capacity(trace.k_i() + 1);
    let mut start = 0;
    let mut start_age = h.initial.at(v);
    for d in trace.within(end) {
        pieces.push(Piece { start, end: d.drop_time, start_age });
        start = d.drop_time;
        start_age = d.post_drop_age;
    }
    pieces.push(Piece { start, end, start_age });
    PiecewiseAoi { trace, pieces }
}
