use super::trace::discontinuities_linear;
use super::{Age, Horizon, SeedSchedule};
use crate::error::ScheduleError;
use crate::graph::DistanceMatrix;

/// Network peak age plus the peak of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakAoi {
    pub network: Age,
    pub per_node: Vec<Age>,
}

/// Network average age plus the average of every node.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageAoi {
    pub network: f64,
    pub per_node: Vec<f64>,
    /// Sum over nodes of twice the area under the age curve.
    pub doubled_area: u128,
}

/// Peak of one node over `[0, T]`: the pre-drop value at every in-horizon
/// drop, the initial curve, and the value at `T`.
fn node_peak(v: usize, sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> Age {
    let trace = discontinuities_linear(v, sched, dm);
    let drops = trace.within(h.end);
    let a0 = h.initial.at(v);
    let Some(last) = drops.last() else {
        return a0 + h.end;
    };
    let first = a0 + drops[0].drop_time;
    let middle = drops.windows(2).map(|w| 1 + w[1].drop_time - w[0].seed_time).max().unwrap_or(0);
    let tail = 1 + h.end - last.seed_time;
    first.max(middle).max(tail)
}

/// Twice the area under one node's age curve: `sum (2 A + L) L` over the
/// pieces between drops.
fn node_doubled_area(v: usize, sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> u128 {
    let trace = discontinuities_linear(v, sched, dm);
    let mut level = h.initial.at(v) as u128;
    let mut since = 0u64;
    let mut area = 0u128;
    for d in trace.within(h.end) {
        let span = (d.drop_time - since) as u128;
        area += (2 * level + span) * span;
        level = d.post_drop_age as u128;
        since = d.drop_time;
    }
    let span = (h.end - since) as u128;
    area + (2 * level + span) * span
}

/// Peak age over `[0, T]`, computed from the discontinuities alone.
pub fn peak_aoi(sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> Result<PeakAoi, ScheduleError> {
    let n = dm.node_count();
    h.validate(sched, n)?;
    let per_node: Vec<Age> = (0..n).map(|v| node_peak(v, sched, dm, h)).collect();
    let network = per_node.iter().copied().max().unwrap_or(0);
    Ok(PeakAoi { network, per_node })
}

/// Time-averaged age over `[0, T]`, exact up to the final division.
pub fn average_aoi(sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> Result<AverageAoi, ScheduleError> {
    let n = dm.node_count();
    h.validate(sched, n)?;
    let areas: Vec<u128> = (0..n).map(|v| node_doubled_area(v, sched, dm, h)).collect();
    let scale = (2 * h.end) as f64;
    let per_node = areas.iter().map(|&a| a as f64 / scale).collect();
    let doubled_area: u128 = areas.iter().sum();
    let network = doubled_area as f64 / (scale * n as f64);
    Ok(AverageAoi { network, per_node, doubled_area })
}

/// Constant part of the average age for `k` rounds.
pub fn eta(a0: f64, delta: u64, horizon: u64, k: usize) -> f64 {
    let (d, t, k) = (delta as f64, horizon as f64, k as f64);
    (2.0 * a0 - 2.0 * d * a0 + t * t + 2.0 * d * t + d * d - 2.0 * d + 2.0 * (d - t * d - d * d) * k + d * d * k * k)
        / (2.0 * t)
}

/// [`eta`] regrouped around `T / 2 + (1 - k) delta`.
pub fn eta_alternate(a0: f64, delta: u64, horizon: u64, k: usize) -> f64 {
    let (d, t, k) = (delta as f64, horizon as f64, k as f64);
    (2.0 * a0 - 2.0 * a0 * d + d * d - 2.0 * d + 2.0 * k * d - 2.0 * k * d * d + k * k * d * d) / (2.0 * t)
        + t / 2.0
        + (1.0 - k) * d
}

/// Split of the average age into a schedule-independent constant and three
/// schedule-dependent terms.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageDecomposition {
    pub eta: f64,
    /// Network means of the three terms, already divided by `2 T`.
    pub term1: f64,
    pub term2: f64,
    pub term3: f64,
    /// Raw integer terms `[term1, term2, term3]` per node.
    pub per_node: Vec<[u128; 3]>,
}

impl AverageDecomposition {
    pub fn total(&self) -> f64 {
        self.eta + self.term1 + self.term2 + self.term3
    }
}

/// With discontinuity rounds `i_1 < ... < i_m` (and `i_0 = 1`) and distances
/// `d_j` from round `i_j`'s seed, a node contributes
/// `2 A0 (delta i_1 + d_1)`, `2 delta sum (i_j - i_{j-1}) d_j` and
/// `delta^2 sum (i_j - i_{j-1})^2`.
///
/// Needs a uniform initial age and every node reached by the last round
/// within the horizon.
pub fn average_aoi_decomposed(
    sched: &SeedSchedule,
    dm: &DistanceMatrix,
    h: &Horizon,
) -> Result<AverageDecomposition, ScheduleError> {
    let n = dm.node_count();
    h.validate(sched, n)?;
    let a0 = h.initial.uniform().ok_or(ScheduleError::NonUniformInitialAge)?;
    let k = sched.k();
    let delta = sched.delta() as u128;

    let mut per_node = Vec::with_capacity(n);
    for v in 0..n {
        let trace = discontinuities_linear(v, sched, dm);
        let last = trace.discontinuities.last().expect("the last round always survives");
        if last.drop_time > h.end {
            return Err(ScheduleError::IncompleteDiffusion { horizon: h.end, node: v, arrival: last.drop_time });
        }
        let first = &trace.discontinuities[0];
        let term1 = 2 * a0 as u128 * (delta * first.round as u128 + (first.post_drop_age - 1) as u128);
        let mut term2 = 0u128;
        let mut term3 = 0u128;
        let mut prev = 1usize;
        for d in &trace.discontinuities {
            let gap = (d.round - prev) as u128;
            term2 += 2 * delta * gap * (d.post_drop_age - 1) as u128;
            term3 += delta * delta * gap * gap;
            prev = d.round;
        }
        per_node.push([term1, term2, term3]);
    }

    let scale = (2 * h.end) as f64 * n as f64;
    let mean = |i: usize| per_node.iter().map(|t| t[i]).sum::<u128>() as f64 / scale;
    Ok(AverageDecomposition {
        eta: eta(a0 as f64, sched.delta(), h.end, k),
        term1: mean(0),
        term2: mean(1),
        term3: mean(2),
        per_node,
    })
}

/// Network peak without the per-node vector; no validation.
pub(crate) fn network_peak_unchecked(sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> Age {
    (0..dm.node_count()).map(|v| node_peak(v, sched, dm, h)).max().unwrap_or(0)
}

/// Summed doubled area over all nodes; no validation.
pub(crate) fn doubled_area_unchecked(sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> u128 {
    (0..dm.node_count()).map(|v| node_doubled_area(v, sched, dm, h)).sum()
}
