use crate::aoi::SeedSchedule;
use crate::error::SeedingError;
use crate::graph::{sum_distance_vector, DistanceMatrix, NodeId};

/// Nodes ordered by total distance to every node, ties by id.
pub fn minisum_order(dm: &DistanceMatrix) -> Vec<NodeId> {
    let sums = sum_distance_vector(dm);
    let mut order: Vec<NodeId> = (0..dm.node_count()).collect();
    order.sort_by_key(|&v| (sums[v], v));
    order
}

/// Total distance from the chosen seeds to every node, counting each seed
/// separately.
pub fn sum_distance_objective(dm: &DistanceMatrix, seeds: &[NodeId]) -> u128 {
    seeds.iter().map(|&s| dm.row(s).iter().map(|&d| d as u128).sum::<u128>()).sum()
}

/// Minimum of [`sum_distance_objective`] over `k` distinct nodes: the sum of
/// the `k` smallest row sums.
pub fn problem1_optimum(dm: &DistanceMatrix, k: usize) -> Result<u128, SeedingError> {
    let n = dm.node_count();
    if k > n {
        return Err(SeedingError::TooManySeeds { requested: k, node_count: n });
    }
    let order = minisum_order(dm);
    Ok(sum_distance_objective(dm, &order[..k]))
}

/// The `k * per_round` nodes of smallest total distance, seeded in
/// increasing order and split into consecutive rounds.
pub fn k_minisum_multi(
    dm: &DistanceMatrix,
    k: usize,
    per_round: usize,
    delta: u64,
) -> Result<SeedSchedule, SeedingError> {
    if k == 0 || per_round == 0 {
        return Err(SeedingError::EmptyRequest);
    }
    let n = dm.node_count();
    let total = k * per_round;
    if total > n {
        return Err(SeedingError::TooManySeeds { requested: total, node_count: n });
    }
    let order = minisum_order(dm);
    let rounds = order[..total].chunks(per_round).map(<[NodeId]>::to_vec).collect();
    Ok(SeedSchedule::new(delta, rounds)?)
}

/// One seed per round from the `k` smallest total distances.
pub fn k_minisum(dm: &DistanceMatrix, k: usize, delta: u64) -> Result<SeedSchedule, SeedingError> {
    k_minisum_multi(dm, k, 1, delta)
}
