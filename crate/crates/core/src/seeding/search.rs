use rayon::prelude::*;

use super::Objective;
use crate::aoi::{age_formula, Horizon, SeedSchedule};
use crate::error::SeedingError;
use crate::graph::{DistanceMatrix, NodeId};

/// Default cap on the number of sequences [`brute_force_optimal`] enumerates.
pub const DEFAULT_SEARCH_CAP: u128 = 2_000_000;

/// At each round's timestamp, seeds the `per_round` nodes whose age (given
/// the earlier rounds) is largest; ties go to the smaller id.
pub fn greedy_max_age(
    dm: &DistanceMatrix,
    k: usize,
    per_round: usize,
    delta: u64,
    h: &Horizon,
) -> Result<SeedSchedule, SeedingError> {
    if k == 0 || per_round == 0 {
        return Err(SeedingError::EmptyRequest);
    }
    let n = dm.node_count();
    let per_round = per_round.min(n);
    let mut rounds: Vec<Vec<NodeId>> = Vec::with_capacity(k);
    for j in 1..=k {
        let t = (j as u64 - 1) * delta + 1;
        let ages: Vec<u64> = if rounds.is_empty() {
            (0..n).map(|v| h.initial.at(v) + t).collect()
        } else {
            let partial = SeedSchedule::new(delta, rounds.clone())?;
            (0..n).map(|v| age_formula(v, t, &partial, dm, h)).collect()
        };
        let mut order: Vec<NodeId> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(ages[v]), v));
        order.truncate(per_round);
        rounds.push(order);
    }
    let sched = SeedSchedule::new(delta, rounds)?;
    h.validate(&sched, n)?;
    Ok(sched)
}

/// Exhaustive search over all `n^k` ordered single-seed sequences; returns
/// the minimiser of `objective`, breaking ties by the lexicographically
/// smallest sequence.
pub fn brute_force_optimal(
    dm: &DistanceMatrix,
    k: usize,
    delta: u64,
    h: &Horizon,
    objective: Objective,
) -> Result<SeedSchedule, SeedingError> {
    brute_force_optimal_capped(dm, k, delta, h, objective, DEFAULT_SEARCH_CAP)
}

/// [`brute_force_optimal`] with an explicit cap on the search space.
pub fn brute_force_optimal_capped(
    dm: &DistanceMatrix,
    k: usize,
    delta: u64,
    h: &Horizon,
    objective: Objective,
    cap: u128,
) -> Result<SeedSchedule, SeedingError> {
    if k == 0 {
        return Err(SeedingError::EmptyRequest);
    }
    let n = dm.node_count();
    let space = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if space > cap {
        return Err(SeedingError::SearchSpaceTooLarge { space, cap });
    }
    h.validate(&SeedSchedule::single(delta, &vec![0; k])?, n)?;

    // each worker owns the sequences starting with one node, visited in
    // lexicographic order, so keeping strict improvements keeps the smallest
    let best = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut seq = vec![0; k];
            seq[0] = first;
            let mut best: Option<(u128, Vec<NodeId>)> = None;
            loop {
                let sched = SeedSchedule::single(delta, &seq).expect("non-empty");
                let value = objective.score(&sched, dm, h);
                if best.as_ref().is_none_or(|(b, _)| value < *b) {
                    best = Some((value, seq.clone()));
                }
                if !advance(&mut seq[1..], n) {
                    break;
                }
            }
            best.expect("at least one sequence")
        })
        .min_by(|a, b| a.cmp(b))
        .expect("n >= 1");
    Ok(SeedSchedule::single(delta, &best.1)?)
}

/// Odometer increment in base `n`; false once it wraps around.
fn advance(digits: &mut [NodeId], n: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}
