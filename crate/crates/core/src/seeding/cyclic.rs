use log::debug;

use crate::aoi::SeedSchedule;
use crate::error::SeedingError;
use crate::graph::{diameter_path, DiameterPath, DistanceMatrix, Graph, NodeId};

/// Coverage count of a `(mu, sigma)` plan: how many path nodes the first
/// `mu` seeds can reach by `T1` without overlap.
#[inline]
fn coverage(mu: u64, sigma: u64, delta: u64) -> u64 {
    mu + delta * mu * (mu - 1) + 2 * sigma * mu
}

/// `T1 = 1 + (mu - 1) delta + sigma`, the time by which the whole diameter
/// path has been updated.
pub fn first_cover_time(mu: u64, sigma: u64, delta: u64) -> u64 {
    1 + (mu - 1) * delta + sigma
}

/// Whether `(mu, sigma)` covers a path with `diam_len` edges and keeps
/// `sigma < delta`.
pub fn is_feasible(mu: u64, sigma: u64, delta: u64, diam_len: u64) -> bool {
    mu >= 1 && sigma < delta && coverage(mu, sigma, delta) > diam_len
}

/// The rounded closed-form solution. It can be infeasible, so callers should
/// prefer [`optimal_mu_sigma`].
pub fn closed_form_mu_sigma(diam_len: u64, delta: u64) -> (u64, u64) {
    let (d, dl) = (delta as f64, diam_len as f64);
    let root = ((d - 1.0 + (d * d + 2.0 * d + 4.0 * dl * d + 1.0).sqrt()) / (2.0 * d)).floor();
    let mu = (root as u64).max(1);
    let base = mu * mu * delta - mu * delta + mu;
    let need = (diam_len + 1).saturating_sub(base);
    (mu, need.div_ceil(2 * mu))
}

/// `(mu, sigma)` minimising `T1` subject to covering the diameter path,
/// by search over `mu in 1..=diam_len + 1` and `sigma < delta`.
///
/// `T1` is strictly increasing in `(mu, sigma)` lexicographically when
/// `sigma < delta`, so the first feasible pair is the unique optimum.
pub fn optimal_mu_sigma(diam_len: u64, delta: u64) -> (u64, u64) {
    assert!(delta >= 1, "delta must be positive");
    let (mu, sigma) = (1..=diam_len + 1)
        .flat_map(|mu| (0..delta).map(move |s| (mu, s)))
        .find(|&(mu, s)| is_feasible(mu, s, delta, diam_len))
        .expect("mu = diam_len + 1 always covers");
    let closed = closed_form_mu_sigma(diam_len, delta);
    if closed == (mu, sigma) {
        debug!("closed form agrees for diam={diam_len}, delta={delta}: {closed:?}");
    } else {
        debug!(
            "closed form {closed:?} differs from search optimum ({mu}, {sigma}) for diam={diam_len}, delta={delta}; feasible={}",
            is_feasible(closed.0, closed.1, delta, diam_len)
        );
    }
    (mu, sigma)
}

/// Candidate position formula `zeta(x)`, 1-based along the diameter path
/// and clamped into `[1, diam_len + 1]`, for `x = 1..=mu`.
pub fn candidate_positions(mu: u64, sigma: u64, delta: u64, diam_len: u64) -> Vec<u64> {
    (1..=mu)
        .map(|x| {
            let m = mu - x + 1;
            let raw = delta * m * m + m + (2 * m - 1) * sigma;
            raw.clamp(1, diam_len + 1)
        })
        .collect()
}

/// Candidate positions that tile the path from its first node: the seed of
/// round `x` reaches `(mu - x) delta + sigma` nodes on each side by `T1`,
/// and the intervals are laid end to end. Clamped like
/// [`candidate_positions`].
pub fn tiled_candidate_positions(mu: u64, sigma: u64, delta: u64, diam_len: u64) -> Vec<u64> {
    (1..=mu)
        .map(|x| {
            let m = mu - x + 1;
            let raw = delta * (m - 1) * (m - 1) + m + (2 * m - 1) * sigma;
            raw.clamp(1, diam_len + 1)
        })
        .collect()
}

/// Where cyclic candidates sit on the diameter path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Placement {
    /// [`candidate_positions`].
    #[default]
    Formula,
    /// [`tiled_candidate_positions`].
    Tiled,
}

/// Everything the cyclic scheme derives from the graph before seeding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPlan {
    pub mu: u64,
    pub sigma: u64,
    /// 1-based path positions, one per candidate.
    pub candidate_positions: Vec<u64>,
    /// Candidate nodes `omega_1..omega_mu`.
    pub candidates: Vec<NodeId>,
    pub t1: u64,
    pub path: DiameterPath,
}

/// Builds the plan on the diameter path of `g`. The path's hop count is
/// used as its length so positions stay meaningful under weighted delays.
pub fn cyclic_plan(g: &Graph, dm: &DistanceMatrix, delta: u64, placement: Placement) -> CyclicPlan {
    let path = diameter_path(g, dm);
    let hops = path.hops() as u64;
    let (mu, sigma) = optimal_mu_sigma(hops.max(1), delta);
    let positions = match placement {
        Placement::Formula => candidate_positions(mu, sigma, delta, hops),
        Placement::Tiled => tiled_candidate_positions(mu, sigma, delta, hops),
    };
    let candidates = positions.iter().map(|&p| path.nodes[p as usize - 1]).collect();
    CyclicPlan { mu, sigma, candidate_positions: positions, candidates, t1: first_cover_time(mu, sigma, delta), path }
}

/// Round-robin over the plan's candidates, `per_round` consecutive
/// candidates per round (duplicates within a round are merged).
pub fn schedule_from_plan(
    plan: &CyclicPlan,
    k: usize,
    delta: u64,
    per_round: usize,
) -> Result<SeedSchedule, SeedingError> {
    if k == 0 || per_round == 0 {
        return Err(SeedingError::EmptyRequest);
    }
    let mu = plan.candidates.len();
    let rounds = (0..k)
        .map(|i| {
            let mut round: Vec<NodeId> = (0..per_round).map(|r| plan.candidates[(i * per_round + r) % mu]).collect();
            let mut seen = Vec::with_capacity(round.len());
            round.retain(|v| {
                let fresh = !seen.contains(v);
                seen.push(*v);
                fresh
            });
            round
        })
        .collect();
    Ok(SeedSchedule::new(delta, rounds)?)
}

/// Cyclic diameter seeding with one seed per round.
pub fn cyclic_seeding(g: &Graph, dm: &DistanceMatrix, k: usize, delta: u64) -> Result<SeedSchedule, SeedingError> {
    let plan = cyclic_plan(g, dm, delta, Placement::Formula);
    schedule_from_plan(&plan, k, delta, 1)
}
