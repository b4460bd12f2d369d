//! Seed schedule construction.

mod cyclic;
mod minisum;
mod search;

pub use cyclic::{
    candidate_positions, closed_form_mu_sigma, cyclic_plan, cyclic_seeding, first_cover_time, is_feasible,
    optimal_mu_sigma, schedule_from_plan, tiled_candidate_positions, CyclicPlan, Placement,
};
pub use minisum::{k_minisum, k_minisum_multi, minisum_order, problem1_optimum, sum_distance_objective};
pub use search::{brute_force_optimal, brute_force_optimal_capped, greedy_max_age, DEFAULT_SEARCH_CAP};

use crate::aoi::{Horizon, SeedSchedule};
use crate::graph::DistanceMatrix;

/// What a search minimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Peak,
    Average,
}

impl Objective {
    /// Exact integer score, monotone in the objective for a fixed graph and
    /// horizon: the network peak, or the summed doubled area for the average.
    /// The schedule is not validated.
    pub fn score(self, sched: &SeedSchedule, dm: &DistanceMatrix, h: &Horizon) -> u128 {
        match self {
            Objective::Peak => crate::aoi::network_peak_unchecked(sched, dm, h) as u128,
            Objective::Average => crate::aoi::doubled_area_unchecked(sched, dm, h),
        }
    }
}
