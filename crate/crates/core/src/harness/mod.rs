//! Experiment sweeps over the number of rounds, with CSV output.

mod cli;
mod output;

pub use cli::{cli_main, Cli};
pub use output::{emit_csv, CSV_HEADER};

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::Instant;

use log::{debug, info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::aoi::{average_aoi, peak_aoi, simulate_oracle_resampled, Horizon, InitialAge, SeedSchedule};
use crate::bounds::{lb_avg, lb_peak, lb_peak_max_distance};
use crate::error::{BoundsError, LoadError, ScheduleError, SeedingError};
use crate::graph::{all_pairs_distances, load_edge_list, Delay, DistanceMatrix, Graph, LoadOptions};
use crate::seeding::{
    brute_force_optimal, cyclic_plan, greedy_max_age, k_minisum_multi, schedule_from_plan, Objective, Placement,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid `{field}`: {message}")]
    Config { field: &'static str, message: String },
    #[error("{path}: {source}")]
    Load { path: PathBuf, source: LoadError },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Seeding(#[from] SeedingError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

impl HarnessError {
    /// Process exit code: 2 for I/O failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io(_) | HarnessError::Load { source: LoadError::Io(_), .. } => 2,
            HarnessError::Csv(e) if e.is_io_error() => 2,
            _ => 1,
        }
    }

    fn config(field: &'static str, message: impl Into<String>) -> Self {
        HarnessError::Config { field, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Algorithm {
    Cyclic,
    Kminisum,
    Greedy,
    Optimal,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cyclic => "cyclic",
            Algorithm::Kminisum => "kminisum",
            Algorithm::Greedy => "greedy",
            Algorithm::Optimal => "optimal",
        }
    }
}

/// Which objective the exhaustive search minimises. Other algorithms
/// ignore it; both objectives are always reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ObjectiveChoice {
    Peak,
    Avg,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum DelayMode {
    /// Every edge takes one time unit.
    #[default]
    Unit,
    /// Delays from the edge list's third column.
    StaticWeighted,
    /// Fresh delays from {1, 2, 3} for every edge and round.
    ResampledPerRound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HorizonMode {
    /// `T = t_k + diam + 5`, enough for the last round to reach everyone.
    #[default]
    Auto,
    /// `T = t_k`.
    LastSeed,
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialAgeSpec {
    Fixed(u64),
    /// Independent integers uniform on `[1, 2 mean - 1]`.
    RandomMean(u64),
}

impl InitialAgeSpec {
    pub fn mean(self) -> u64 {
        match self {
            InitialAgeSpec::Fixed(a) | InitialAgeSpec::RandomMean(a) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph_path: PathBuf,
    pub load: LoadOptions,
    pub algorithms: Vec<Algorithm>,
    pub objective: ObjectiveChoice,
    pub k_values: Vec<usize>,
    pub delta: u64,
    pub a0: InitialAgeSpec,
    pub horizon: HorizonMode,
    pub seeds_per_round: usize,
    pub delay_mode: DelayMode,
    pub trials: usize,
    pub rng_seed: u64,
    pub placement: Placement,
    pub record_runtime: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            graph_path: PathBuf::new(),
            load: LoadOptions::default(),
            algorithms: vec![Algorithm::Cyclic],
            objective: ObjectiveChoice::Both,
            k_values: vec![1],
            delta: 1,
            a0: InitialAgeSpec::Fixed(1),
            horizon: HorizonMode::Auto,
            seeds_per_round: 1,
            delay_mode: DelayMode::Unit,
            trials: 10,
            rng_seed: 0,
            placement: Placement::Formula,
            record_runtime: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.algorithms.is_empty() {
            return Err(HarnessError::config("algorithm", "at least one algorithm is required"));
        }
        if self.k_values.is_empty() || self.k_values.contains(&0) {
            return Err(HarnessError::config("k", "round counts must be a non-empty list of positive integers"));
        }
        if self.delta == 0 {
            return Err(HarnessError::config("delta", "must be at least 1"));
        }
        if self.a0.mean() == 0 {
            return Err(HarnessError::config("a0", "must be at least 1"));
        }
        if self.seeds_per_round == 0 {
            return Err(HarnessError::config("seeds-per-round", "must be at least 1"));
        }
        if self.trials == 0 {
            return Err(HarnessError::config("trials", "must be at least 1"));
        }
        if self.seeds_per_round > 1 && self.algorithms.contains(&Algorithm::Optimal) {
            return Err(HarnessError::config("seeds-per-round", "exhaustive search supports one seed per round"));
        }
        if let HorizonMode::Fixed(0) = self.horizon {
            return Err(HarnessError::config("horizon", "must be positive"));
        }
        Ok(())
    }

    /// Whether rows average over several random trials.
    pub fn is_randomized(&self) -> bool {
        matches!(self.a0, InitialAgeSpec::RandomMean(_)) || self.delay_mode == DelayMode::ResampledPerRound
    }
}

/// One sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub algorithm: Algorithm,
    pub k: usize,
    pub delta: u64,
    pub seeds_per_round: usize,
    pub peak: f64,
    pub avg: f64,
    pub lb_peak: f64,
    pub lb_avg: f64,
    pub peak_ratio: f64,
    pub avg_ratio: f64,
    pub runtime_ms: Option<f64>,
    pub rng_seed: u64,
    pub horizon: u64,
    pub trials: usize,
    /// Sample standard deviations over trials, for randomized runs.
    pub spread: Option<TrialSpread>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpread {
    pub peak: f64,
    pub avg: f64,
    pub peak_ratio: f64,
    pub avg_ratio: f64,
}

/// Loads the graph named in the config and runs the sweep.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, HarnessError> {
    cfg.validate()?;
    let load_error = |source| HarnessError::Load { path: cfg.graph_path.clone(), source };
    let file = File::open(&cfg.graph_path).map_err(|e| load_error(LoadError::Io(e)))?;
    let g = load_edge_list(BufReader::new(file), &cfg.load).map_err(load_error)?;
    info!("loaded {} nodes and {} edges from {}", g.node_count(), g.edge_count(), cfg.graph_path.display());
    run_on_graph(cfg, &g)
}

/// Runs the sweep on an in-memory graph. Rows come out ordered by
/// algorithm (as listed) and then by `k` (as listed).
pub fn run_on_graph(cfg: &ExperimentConfig, g: &Graph) -> Result<Vec<ExperimentRow>, HarnessError> {
    cfg.validate()?;
    let g = match cfg.delay_mode {
        DelayMode::StaticWeighted => g.clone(),
        DelayMode::Unit | DelayMode::ResampledPerRound => g.unit_topology(),
    };
    if g.node_count() < 2 {
        return Err(HarnessError::config("graph", "needs at least two nodes"));
    }
    let dm = all_pairs_distances(&g);
    debug!(
        "diameter {}; max-distance peak benchmark {:.3}",
        dm.max_entry(),
        lb_peak_max_distance(&dm, cfg.a0.mean() as f64)
    );

    let points: Vec<(Algorithm, usize)> =
        cfg.algorithms.iter().flat_map(|&a| cfg.k_values.iter().map(move |&k| (a, k))).collect();
    let run = || -> Result<Vec<ExperimentRow>, HarnessError> {
        points.par_iter().map(|&(a, k)| run_point(cfg, &g, &dm, a, k)).collect()
    };
    match thread_cap()? {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| HarnessError::config("AOI_THREADS", e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn thread_cap() -> Result<Option<usize>, HarnessError> {
    match std::env::var("AOI_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(HarnessError::config("AOI_THREADS", format!("expected a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

/// Resolves `T` for `k` rounds. `diam` is the largest distance any round's
/// information may need.
fn resolve_horizon(mode: HorizonMode, k: usize, delta: u64, diam: u64) -> Result<u64, HarnessError> {
    let last = 1 + (k as u64 - 1) * delta;
    match mode {
        HorizonMode::Auto => Ok(last + diam + 5),
        HorizonMode::LastSeed => Ok(last),
        HorizonMode::Fixed(t) if t >= last => Ok(t),
        HorizonMode::Fixed(t) => Err(HarnessError::config(
            "horizon",
            format!("T = {t} ends before the last seeding time {last} for k = {k}"),
        )),
    }
}

/// Per-point, per-trial random stream, independent of sweep order.
fn trial_rng(seed: u64, k: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((k as u64) << 32) | trial as u64);
    rng
}

struct TrialResult {
    peak: f64,
    avg: f64,
    lb_peak: f64,
    lb_avg: f64,
}

fn run_point(
    cfg: &ExperimentConfig,
    g: &Graph,
    dm: &DistanceMatrix,
    algorithm: Algorithm,
    k: usize,
) -> Result<ExperimentRow, HarnessError> {
    let started = Instant::now();
    let n = g.node_count();
    let resampled = cfg.delay_mode == DelayMode::ResampledPerRound;
    // resampled delays can triple every hop
    let reach = if resampled { 3 * dm.max_entry() } else { dm.max_entry() };
    let horizon = resolve_horizon(cfg.horizon, k, cfg.delta, reach)?;
    let trials = if cfg.is_randomized() { cfg.trials } else { 1 };

    let mut results = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.rng_seed, k, trial);
        let initial = match cfg.a0 {
            InitialAgeSpec::Fixed(a) => InitialAge::Uniform(a),
            InitialAgeSpec::RandomMean(mean) => {
                InitialAge::PerNode((0..n).map(|_| rng.gen_range(1..=2 * mean - 1)).collect())
            }
        };
        let h = Horizon::new(horizon, initial);
        let a0_mean = h.initial.mean(n);
        let bench_peak = lb_peak(dm, a0_mean)?;
        let bench_avg = lb_avg(dm, a0_mean, cfg.delta, horizon, k)?;

        let (peak_sched, avg_sched) = build_schedules(cfg, g, dm, algorithm, k, &h)?;
        let (peak, avg) = if resampled {
            let delays = resample_delays(g, k, &mut rng);
            let lookup = |round: usize, u, v| delays[round - 1][g.edge_index(u, v).expect("neighbours share an edge")];
            let peak = simulate_oracle_resampled(g, &peak_sched, &h, lookup)?.network_peak() as f64;
            let avg = simulate_oracle_resampled(g, &avg_sched, &h, lookup)?.network_average();
            (peak, avg)
        } else {
            (peak_aoi(&peak_sched, dm, &h)?.network as f64, average_aoi(&avg_sched, dm, &h)?.network)
        };
        results.push(TrialResult { peak, avg, lb_peak: bench_peak, lb_avg: bench_avg });
    }

    let mean = |f: &dyn Fn(&TrialResult) -> f64| results.iter().map(f).sum::<f64>() / results.len() as f64;
    let std = |f: &dyn Fn(&TrialResult) -> f64| {
        let m = mean(f);
        let var = results.iter().map(|r| (f(r) - m).powi(2)).sum::<f64>() / (results.len().max(2) - 1) as f64;
        var.sqrt()
    };
    let peak_ratio = |r: &TrialResult| r.peak / r.lb_peak;
    let avg_ratio = |r: &TrialResult| r.avg / r.lb_avg;

    let row = ExperimentRow {
        algorithm,
        k,
        delta: cfg.delta,
        seeds_per_round: cfg.seeds_per_round,
        peak: mean(&|r| r.peak),
        avg: mean(&|r| r.avg),
        lb_peak: mean(&|r| r.lb_peak),
        lb_avg: mean(&|r| r.lb_avg),
        peak_ratio: mean(&peak_ratio),
        avg_ratio: mean(&avg_ratio),
        runtime_ms: cfg.record_runtime.then(|| started.elapsed().as_secs_f64() * 1e3),
        rng_seed: cfg.rng_seed,
        horizon,
        trials,
        spread: cfg.is_randomized().then(|| TrialSpread {
            peak: std(&|r| r.peak),
            avg: std(&|r| r.avg),
            peak_ratio: std(&peak_ratio),
            avg_ratio: std(&avg_ratio),
        }),
    };
    if row.peak_ratio < 1.0 || row.avg_ratio < 1.0 {
        warn!(
            "{} k={k}: ratio below one (peak {:.4}, avg {:.4}); the benchmark exceeds the achieved value",
            algorithm.name(),
            row.peak_ratio,
            row.avg_ratio
        );
    }
    Ok(row)
}

/// Schedules used for the peak and the average columns. They differ only for
/// the exhaustive search with both objectives.
fn build_schedules(
    cfg: &ExperimentConfig,
    g: &Graph,
    dm: &DistanceMatrix,
    algorithm: Algorithm,
    k: usize,
    h: &Horizon,
) -> Result<(SeedSchedule, SeedSchedule), HarnessError> {
    let r = cfg.seeds_per_round;
    let single = |s: SeedSchedule| (s.clone(), s);
    Ok(match algorithm {
        Algorithm::Cyclic => {
            let plan = cyclic_plan(g, dm, cfg.delta, cfg.placement);
            single(schedule_from_plan(&plan, k, cfg.delta, r)?)
        }
        Algorithm::Kminisum => single(k_minisum_multi(dm, k, r, cfg.delta)?),
        Algorithm::Greedy => single(greedy_max_age(dm, k, r, cfg.delta, h)?),
        Algorithm::Optimal => match cfg.objective {
            ObjectiveChoice::Peak => single(brute_force_optimal(dm, k, cfg.delta, h, Objective::Peak)?),
            ObjectiveChoice::Avg => single(brute_force_optimal(dm, k, cfg.delta, h, Objective::Average)?),
            ObjectiveChoice::Both => (
                brute_force_optimal(dm, k, cfg.delta, h, Objective::Peak)?,
                brute_force_optimal(dm, k, cfg.delta, h, Objective::Average)?,
            ),
        },
    })
}

/// `delays[round][edge]` drawn uniformly from {1, 2, 3}.
fn resample_delays(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Delay>> {
    (0..k).map(|_| (0..g.edge_count()).map(|_| rng.gen_range(1..=3)).collect()).collect()
}
