mod common;

use aoi_diffusion::aoi::{
    age_formula, average_aoi, average_aoi_decomposed, discontinuities_linear, discontinuities_quadratic, eta,
    eta_alternate, peak_aoi, piecewise_trace, simulate_oracle, simulate_oracle_resampled, Horizon,
};
use aoi_diffusion::bounds::avg_two_sided_bounds;
use aoi_diffusion::graph::{all_pairs_distances, diameter_path, is_histogram, reduce_to_histogram, Graph};
use aoi_diffusion::harness::{emit_csv, run_on_graph, Algorithm, ExperimentConfig};
use aoi_diffusion::seeding::{
    brute_force_optimal, candidate_positions, cyclic_plan, first_cover_time, greedy_max_age, is_feasible, k_minisum,
    optimal_mu_sigma, problem1_optimum, schedule_from_plan, sum_distance_objective, tiled_candidate_positions,
    Objective, Placement,
};
use common::*;
use proptest::prelude::*;
use rand::Rng;

/// A random connected instance with a schedule and a horizon that lets the
/// last round reach everyone.
struct Instance {
    g: Graph,
    sched: aoi_diffusion::aoi::SeedSchedule,
    h: Horizon,
}

fn instance(seed: u64, max_n: usize, max_delay: u32, max_per_round: usize) -> Instance {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=max_n);
    let g = random_connected(&mut rng, n, 0.2, max_delay);
    let dm = all_pairs_distances(&g);
    let k = rng.gen_range(1..=6);
    let delta = rng.gen_range(1..=3);
    let sched = random_schedule(&mut rng, n, k, delta, max_per_round);
    let a0 = rng.gen_range(1..=8);
    let h = Horizon::uniform(full_horizon(k, delta, &dm), a0);
    Instance { g, sched, h }
}

/// Path nodes (1-based positions) that no candidate reaches by `t1` when
/// candidate `x` is seeded at round `x`.
fn uncovered(positions: &[u64], delta: u64, diam: u64, t1: u64) -> Vec<u64> {
    (1..=diam + 1)
        .filter(|&p| {
            !positions.iter().enumerate().any(|(i, &c)| {
                let seeded = 1 + i as u64 * delta;
                seeded + c.abs_diff(p) <= t1
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn filters_agree_and_keep_the_last_round(seed in any::<u64>()) {
        let inst = instance(seed, 15, 3, 2);
        let dm = all_pairs_distances(&inst.g);
        for v in 0..inst.g.node_count() {
            let lin = discontinuities_linear(v, &inst.sched, &dm);
            prop_assert_eq!(&lin, &discontinuities_quadratic(v, &inst.sched, &dm));
            let d = &lin.discontinuities;
            prop_assert_eq!(d.last().unwrap().round, inst.sched.k());
            for w in d.windows(2) {
                prop_assert!(w[0].round < w[1].round);
                prop_assert!(w[0].drop_time < w[1].drop_time);
                prop_assert!(w[0].seed_time < w[1].seed_time);
            }
        }
    }

    #[test]
    fn ages_agree_with_simulation(seed in any::<u64>()) {
        let inst = instance(seed, 12, 3, 3);
        let dm = all_pairs_distances(&inst.g);
        let series = simulate_oracle(&inst.g, &inst.sched, &inst.h).unwrap();
        for v in 0..inst.g.node_count() {
            let curve = piecewise_trace(v, &inst.sched, &dm, &inst.h);
            for t in 0..=inst.h.end {
                let age = series.age(v, t);
                prop_assert!(age >= 1);
                prop_assert_eq!(curve.age_at(t), age);
                prop_assert_eq!(age_formula(v, t, &inst.sched, &dm, &inst.h), age);
            }
        }
        // a seed holds age 1 at its own round
        for j in 1..=inst.sched.k() {
            for &s in inst.sched.round(j) {
                prop_assert_eq!(series.age(s, inst.sched.timestamp(j)), 1);
            }
        }
    }

    #[test]
    fn objectives_match_simulation(seed in any::<u64>()) {
        let inst = instance(seed, 12, 2, 2);
        let dm = all_pairs_distances(&inst.g);
        let series = simulate_oracle(&inst.g, &inst.sched, &inst.h).unwrap();
        let peak = peak_aoi(&inst.sched, &dm, &inst.h).unwrap();
        let avg = average_aoi(&inst.sched, &dm, &inst.h).unwrap();
        prop_assert_eq!(peak.network, series.network_peak());
        prop_assert!((avg.network - series.network_average()).abs() < 1e-9);
        for v in 0..inst.g.node_count() {
            prop_assert_eq!(peak.per_node[v], series.peak(v));
            prop_assert!((avg.per_node[v] - series.average(v)).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_resampled_delays_match_static(seed in any::<u64>()) {
        let inst = instance(seed, 10, 1, 2);
        let fixed = simulate_oracle(&inst.g, &inst.sched, &inst.h).unwrap();
        let resampled = simulate_oracle_resampled(&inst.g, &inst.sched, &inst.h, |_, _, _| 1).unwrap();
        for v in 0..inst.g.node_count() {
            for t in 0..=inst.h.end {
                prop_assert_eq!(fixed.age(v, t), resampled.age(v, t));
            }
        }
    }

    #[test]
    fn decomposition_reassembles_the_average(seed in any::<u64>()) {
        let inst = instance(seed, 15, 3, 1);
        let dm = all_pairs_distances(&inst.g);
        let parts = average_aoi_decomposed(&inst.sched, &dm, &inst.h).unwrap();
        let avg = average_aoi(&inst.sched, &dm, &inst.h).unwrap().network;
        prop_assert!((parts.total() - avg).abs() < 1e-9, "{} vs {}", parts.total(), avg);
    }

    #[test]
    fn average_upper_bound_holds(seed in any::<u64>()) {
        let inst = instance(seed, 15, 1, 1);
        let dm = all_pairs_distances(&inst.g);
        let b = avg_two_sided_bounds(&inst.sched, &dm, &inst.h).unwrap();
        let avg = average_aoi(&inst.sched, &dm, &inst.h).unwrap().network;
        prop_assert!(avg <= b.upper + 1e-9);
        prop_assert!(b.lower <= b.upper + 1e-9);
        prop_assert!(b.beta >= 1);
    }

    #[test]
    fn eta_forms_agree(a0 in 1u32..200, delta in 1u64..20, k in 1usize..60, slack in 0u64..500) {
        let t = 1 + (k as u64 - 1) * delta + slack;
        let (x, y) = (eta(a0 as f64, delta, t, k), eta_alternate(a0 as f64, delta, t, k));
        prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
    }

    #[test]
    fn shortest_paths_match_floyd_warshall(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=30);
        let weighted = random_connected(&mut rng, n, 0.1, 6);
        prop_assert_eq!(all_pairs_distances(&weighted), floyd_warshall(&weighted));
        let unit = weighted.unit_topology();
        prop_assert_eq!(all_pairs_distances(&unit), floyd_warshall(&unit));
    }

    #[test]
    fn trees_reduce_to_histograms(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=40);
        let g = random_tree(&mut rng, n);
        let dm = all_pairs_distances(&g);
        let dp = diameter_path(&g, &dm);
        let h = reduce_to_histogram(&g, &dp, &dm);
        prop_assert_eq!(h.edge_count(), n - 1);
        let hdm = all_pairs_distances(&h);
        prop_assert!(is_histogram(&h, &dp, &hdm));
    }

    #[test]
    fn mu_sigma_is_feasible_and_minimal(diam in 1u64..3000, delta in 1u64..40) {
        let (mu, sigma) = optimal_mu_sigma(diam, delta);
        prop_assert!(is_feasible(mu, sigma, delta, diam));
        prop_assert!(sigma < delta);
        let best = first_cover_time(mu, sigma, delta);
        for m in 1..=mu {
            for s in 0..delta {
                if first_cover_time(m, s, delta) < best {
                    prop_assert!(!is_feasible(m, s, delta, diam), "({m}, {s}) beats ({mu}, {sigma})");
                }
            }
        }
    }

    #[test]
    fn tiled_candidates_cover_the_path(diam in 1u64..400, delta in 1u64..6) {
        let (mu, sigma) = optimal_mu_sigma(diam, delta);
        let positions = tiled_candidate_positions(mu, sigma, delta, diam);
        let t1 = first_cover_time(mu, sigma, delta);
        prop_assert!(positions.iter().all(|&p| (1..=diam + 1).contains(&p)));
        prop_assert_eq!(uncovered(&positions, delta, diam, t1), Vec::<u64>::new());
    }

    #[test]
    fn cyclic_schedule_cycles_through_candidates(n in 2usize..40, delta in 1u64..4, k in 1usize..12) {
        let g = Graph::path(n);
        let dm = all_pairs_distances(&g);
        let plan = cyclic_plan(&g, &dm, delta, Placement::Formula);
        let sched = schedule_from_plan(&plan, k, delta, 1).unwrap();
        prop_assert_eq!(sched.k(), k);
        for j in 1..=k {
            prop_assert_eq!(sched.round(j), &[plan.candidates[(j - 1) % plan.candidates.len()]][..]);
        }
    }

    #[test]
    fn k_minisum_uses_distinct_optimal_seeds(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=25);
        let g = random_connected(&mut rng, n, 0.1, 3);
        let dm = all_pairs_distances(&g);
        let k = rng.gen_range(1..=n);
        let sched = k_minisum(&dm, k, 1).unwrap();
        let mut seeds = sched.seed_nodes();
        seeds.sort_unstable();
        seeds.dedup();
        prop_assert_eq!(seeds.len(), k);
        prop_assert_eq!(sum_distance_objective(&dm, &seeds), problem1_optimum(&dm, k).unwrap());
    }

    #[test]
    fn exhaustive_search_beats_the_heuristics(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(2..=6);
        let g = random_connected(&mut rng, n, 0.3, 1);
        let dm = all_pairs_distances(&g);
        let k = rng.gen_range(1..=3);
        let delta = rng.gen_range(1..=2);
        let h = Horizon::uniform(full_horizon(k, delta, &dm), rng.gen_range(1..=4));
        let heuristics = [
            aoi_diffusion::seeding::cyclic_seeding(&g, &dm, k, delta).unwrap(),
            k_minisum(&dm, k.min(n), delta).unwrap(),
            greedy_max_age(&dm, k, 1, delta, &h).unwrap(),
        ];
        for objective in [Objective::Peak, Objective::Average] {
            let best = brute_force_optimal(&dm, k, delta, &h, objective).unwrap();
            let best_score = objective.score(&best, &dm, &h);
            for sched in heuristics.iter().filter(|s| s.k() == k) {
                prop_assert!(best_score <= objective.score(sched, &dm, &h));
            }
        }
    }
}

#[test]
fn formula_placement_leaves_gaps() {
    // diam 8, delta 1: (mu, sigma) = (3, 0), T1 = 3
    let (mu, sigma) = optimal_mu_sigma(8, 1);
    let t1 = first_cover_time(mu, sigma, 1);
    assert_eq!((mu, sigma, t1), (3, 0, 3));
    let formula = candidate_positions(mu, sigma, 1, 8);
    assert_eq!(formula, vec![9, 6, 2]);
    assert_eq!(uncovered(&formula, 1, 8, t1), vec![1, 3, 4]);
    let tiled = tiled_candidate_positions(mu, sigma, 1, 8);
    assert_eq!(tiled, vec![7, 3, 1]);
    assert!(uncovered(&tiled, 1, 8, t1).is_empty());
}

#[test]
fn non_tree_graphs_can_break_the_histogram_condition() {
    let g = Graph::cycle(6);
    let dm = all_pairs_distances(&g);
    let dp = diameter_path(&g, &dm);
    assert!(!is_histogram(&g, &dp, &dm));
    // the off-path nodes hang next to the path ends, stretching the tree
    // beyond the original diameter
    let reduced = reduce_to_histogram(&g, &dp, &dm);
    let rdm = all_pairs_distances(&reduced);
    assert!(rdm.max_entry() > dm.max_entry());
    assert!(!is_histogram(&reduced, &dp, &rdm));
}

#[test]
fn sweep_rows_round_trip_through_csv() {
    let mut rng = rng(77);
    let g = random_connected(&mut rng, 20, 0.1, 1);
    let cfg = ExperimentConfig {
        algorithms: vec![Algorithm::Cyclic, Algorithm::Kminisum, Algorithm::Greedy],
        k_values: vec![1, 3, 5],
        ..ExperimentConfig::default()
    };
    let rows = run_on_graph(&cfg, &g).unwrap();
    assert_eq!(rows.len(), 9);
    let mut out = Vec::new();
    emit_csv(&rows, &mut out).unwrap();
    let mut reader = csv::Reader::from_reader(out.as_slice());
    let parsed: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(parsed.len(), rows.len());
    for (rec, row) in parsed.iter().zip(&rows) {
        assert_eq!(&rec[0], row.algorithm.name());
        assert_eq!(rec[1].parse::<usize>().unwrap(), row.k);
        assert!((rec[4].parse::<f64>().unwrap() - row.peak).abs() < 1e-6);
        assert!((rec[5].parse::<f64>().unwrap() - row.avg).abs() < 1e-6);
    }
}
