//! Lower bounds, two-sided bounds and approximation guarantees.
//!
//! `A0` enters as a real number so a random initial age can be summarised
//! by its mean. Distance sums are accumulated as integers; only the final
//! combination is floating point.

use crate::aoi::{discontinuities_linear, eta, Horizon, SeedSchedule};
use crate::error::{BoundsError, ScheduleError};
use crate::graph::DistanceMatrix;
use crate::seeding::{optimal_mu_sigma, problem1_optimum};

/// Peak benchmark: `A0 + 1` plus the mean distance over ordered pairs of
/// distinct nodes. A single node gets `A0 + 1`.
pub fn lb_peak(dm: &DistanceMatrix, a0: f64) -> Result<f64, BoundsError> {
    let n = dm.node_count();
    if n == 0 {
        return Err(BoundsError::TooFewNodes { needed: 1, got: n });
    }
    if n == 1 {
        return Ok(a0 + 1.0);
    }
    let pairs = (n * (n - 1)) as f64;
    Ok(a0 + 1.0 + dm.total() as f64 / pairs)
}

/// `A0 + 1 + diam`, reported next to [`lb_peak`] for comparison. It is not
/// a valid lower bound in general: several seeds can share the work.
pub fn lb_peak_max_distance(dm: &DistanceMatrix, a0: f64) -> f64 {
    a0 + 1.0 + dm.max_entry() as f64
}

/// Average benchmark built from the sum-distance optimum `P1` over `k`
/// distinct seeds:
/// `eta + (2 A0 delta + (k-1)^2 delta^2 / k + 2 delta P1 / (n diam)) / (2 T)`.
pub fn lb_avg(dm: &DistanceMatrix, a0: f64, delta: u64, horizon: u64, k: usize) -> Result<f64, BoundsError> {
    let n = dm.node_count();
    if k == 0 {
        return Err(BoundsError::TooFewRounds { k });
    }
    let last = 1 + (k as u64 - 1) * delta;
    if horizon < last {
        return Err(ScheduleError::HorizonTooShort { horizon, last_seed_time: last }.into());
    }
    if n == 1 {
        return Ok(single_node_average(a0, delta, horizon, k));
    }
    if n < k {
        return Err(BoundsError::TooFewNodes { needed: k, got: n });
    }
    let (d, kf, t) = (delta as f64, k as f64, horizon as f64);
    let diam = dm.max_entry().max(1) as f64;
    let p1 = problem1_optimum(dm, k).expect("k <= n checked above") as f64;
    let spread = 2.0 * a0 * d + (kf - 1.0).powi(2) * d * d / kf + 2.0 * d * p1 / (n as f64 * diam);
    Ok(eta(a0, delta, horizon, k) + spread / (2.0 * t))
}

/// Exact average of a lone node seeded every round: one ramp from `A0`,
/// `k - 1` sawteeth of width `delta`, and a tail after the last round.
fn single_node_average(a0: f64, delta: u64, horizon: u64, k: usize) -> f64 {
    let d = delta as f64;
    let tail = (horizon - (1 + (k as u64 - 1) * delta)) as f64;
    let area = a0 + 0.5 + (k as f64 - 1.0) * (d + d * d / 2.0) + tail + tail * tail / 2.0;
    area / horizon as f64
}

/// Largest distance from any seed of `sched` to any node, at least 1.
pub fn beta(sched: &SeedSchedule, dm: &DistanceMatrix) -> u64 {
    sched.seed_nodes().iter().flat_map(|&s| dm.row(s).iter().copied()).max().unwrap_or(0).max(1)
}

/// Schedule-dependent lower and upper bounds on the average age.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageBounds {
    pub lower: f64,
    pub upper: f64,
    pub beta: u64,
    /// Total number of discontinuities over all nodes.
    pub discontinuities: u64,
}

/// Two-sided bounds for `sched` under a uniform initial age. Every node must
/// receive the last round within the horizon.
pub fn avg_two_sided_bounds(
    sched: &SeedSchedule,
    dm: &DistanceMatrix,
    h: &Horizon,
) -> Result<AverageBounds, BoundsError> {
    let n = dm.node_count();
    h.validate(sched, n)?;
    let a0 = h.initial.uniform().ok_or(ScheduleError::NonUniformInitialAge)?;

    let mut discontinuities = 0u64;
    for v in 0..n {
        let trace = discontinuities_linear(v, sched, dm);
        let last = trace.discontinuities.last().expect("the last round always survives");
        if last.drop_time > h.end {
            return Err(ScheduleError::IncompleteDiffusion { horizon: h.end, node: v, arrival: last.drop_time }.into());
        }
        discontinuities += trace.k_i() as u64;
    }

    let k = sched.k();
    let beta = beta(sched, dm);
    if n == 1 {
        let exact = single_node_average(a0 as f64, sched.delta(), h.end, k);
        return Ok(AverageBounds { lower: exact, upper: exact, beta, discontinuities });
    }
    let round_sum: u128 =
        (1..=k).flat_map(|j| (0..n).map(move |v| (j, v))).map(|(j, v)| sched.round_distance(dm, j, v) as u128).sum();
    let first_round_sum: u128 = (0..n).map(|v| sched.round_distance(dm, 1, v) as u128).sum();

    let (a0f, d, nf, kf) = (a0 as f64, sched.delta() as f64, n as f64, k as f64);
    let base = eta(a0f, sched.delta(), h.end, k);
    let scale = 1.0 / (2.0 * h.end as f64);
    let lower_spread = 2.0 * a0f * d
        + nf * (kf - 1.0).powi(2) * d * d / discontinuities as f64
        + 2.0 * d * round_sum as f64 / (nf * beta as f64);
    let upper_spread = 2.0 * a0f * d
        + (kf - 1.0).powi(2) * d * d
        + 2.0 * a0f * first_round_sum as f64 / nf
        + 2.0 * d * round_sum as f64 / nf;
    Ok(AverageBounds { lower: base + scale * lower_spread, upper: base + scale * upper_spread, beta, discontinuities })
}

/// Line-network peak lower bound and the `floor(xi)` it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinePeakBound {
    pub value: u64,
    pub xi_floor: u64,
}

/// `max{A0 + sigma, floor(xi) delta} + 1 + mu delta` where `xi` is the
/// positive root of `delta x^2 + (1 + 3 delta) x - (1 + 2 mu delta) = 0`.
pub fn line_peak_lower_bound(delta: u64, a0: u64, mu: u64, sigma: u64) -> LinePeakBound {
    let d = delta as f64;
    let b = 1.0 + 3.0 * d;
    let xi = (-b + (b * b + 4.0 * d * (1.0 + 2.0 * mu as f64 * d)).sqrt()) / (2.0 * d);
    let xi_floor = xi.floor().max(0.0) as u64;
    let value = (a0 + sigma).max(xi_floor * delta) + 1 + mu * delta;
    LinePeakBound { value, xi_floor }
}

/// Guarantee of the cyclic scheme, `(diam + A0) / line bound`, floored at 1.
pub fn peak_approx_guarantee(diam_len: u64, a0: u64, delta: u64) -> f64 {
    peak_approx_guarantee_raw(diam_len, a0, delta).max(1.0)
}

/// [`peak_approx_guarantee`] without the floor.
pub fn peak_approx_guarantee_raw(diam_len: u64, a0: u64, delta: u64) -> f64 {
    let (mu, sigma) = optimal_mu_sigma(diam_len.max(1), delta);
    let bound = line_peak_lower_bound(delta, a0, mu, sigma);
    (diam_len + a0) as f64 / bound.value as f64
}

/// Guarantee of the sum-distance scheme for the average:
/// `max{beta + A0 beta / (k delta), (2 A0 delta + eta + (k-1)^2 delta^2) /
/// (2 A0 delta + eta + (k-1)^2 delta^2 / k)}`, floored at 1.
pub fn avg_approx_guarantee(beta: u64, a0: f64, k: usize, delta: u64, horizon: u64) -> f64 {
    avg_approx_guarantee_raw(beta, a0, k, delta, horizon).max(1.0)
}

/// [`avg_approx_guarantee`] without the floor.
pub fn avg_approx_guarantee_raw(beta: u64, a0: f64, k: usize, delta: u64, horizon: u64) -> f64 {
    let (b, d, kf) = (beta.max(1) as f64, delta as f64, k as f64);
    let e = eta(a0, delta, horizon, k);
    let spread = (kf - 1.0).powi(2) * d * d;
    let first = b + a0 * b / (kf * d);
    let second = (2.0 * a0 * d + e + spread) / (2.0 * a0 * d + e + spread / kf);
    first.max(second)
}

/// Seeding interval balancing the shared area of consecutive rounds:
/// `A0 / (k-1)^2 + (T-1) / (k-1)`.
pub fn optimal_delta(a0: f64, k: usize, horizon: u64) -> Result<f64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::TooFewRounds { k });
    }
    let km = (k - 1) as f64;
    Ok(a0 / (km * km) + (horizon as f64 - 1.0) / km)
}

/// All benchmarks for one schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lb_peak: f64,
    pub lb_peak_max_distance: f64,
    pub lb_avg: f64,
    pub avg_lower: Option<f64>,
    pub avg_upper: Option<f64>,
    pub peak_ratio_guarantee: f64,
    pub avg_ratio_guarantee: f64,
    pub beta: u64,
    pub xi_floor: u64,
}

/// Computes every benchmark with `A0` taken as the mean initial age. The
/// two-sided bounds are present only for a uniform initial age and complete
/// diffusion.
pub fn bound_report(sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> Result<BoundReport, BoundsError> {
    let n = dm.node_count();
    let a0 = h.initial.mean(n);
    let (k, delta) = (sched.k(), sched.delta());
    let beta = beta(sched, dm);
    let diam = dm.max_entry();
    let (mu, sigma) = optimal_mu_sigma(diam.max(1), delta);
    let a0_int = a0.round().max(1.0) as u64;
    let (avg_lower, avg_upper) = match avg_two_sided_bounds(sched, dm, h) {
        Ok(b) => (Some(b.lower), Some(b.upper)),
        Err(_) => (None, None),
    };
    Ok(BoundReport {
        lb_peak: lb_peak(dm, a0)?,
        lb_peak_max_distance: lb_peak_max_distance(dm, a0),
        lb_avg: lb_avg(dm, a0, delta, h.end, k)?,
        avg_lower,
        avg_upper,
        peak_ratio_guarantee: peak_approx_guarantee(diam, a0_int, delta),
        avg_ratio_guarantee: avg_approx_guarantee(beta, a0, k, delta, h.end),
        beta,
        xi_floor: line_peak_lower_bound(delta, a0_int, mu, sigma).xi_floor,
    })
}
