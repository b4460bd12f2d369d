use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

use super::{
    emit_csv, run_experiment, Algorithm, DelayMode, ExperimentConfig, HarnessError, HorizonMode, InitialAgeSpec,
    ObjectiveChoice,
};
use crate::graph::LoadOptions;
use crate::seeding::Placement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum PlacementArg {
    Formula,
    Tiled,
}

/// Sweep seed schedules over a social graph and report peak and average
/// age of information against lower-bound benchmarks.
#[derive(Debug, Parser)]
#[command(name = "aoi-seed", version)]
pub struct Cli {
    /// Edge list: `u v [delay]` per line, `#` comments.
    #[arg(long)]
    graph: PathBuf,

    /// Comma-separated algorithms.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "cyclic")]
    algorithm: Vec<Algorithm>,

    /// Objective minimised by `optimal`.
    #[arg(long, value_enum, default_value = "both")]
    objective: ObjectiveChoice,

    /// Comma-separated round counts.
    #[arg(long, value_delimiter = ',', conflicts_with = "k_max")]
    k: Vec<usize>,

    /// Sweep k over `k-min..=k-max`.
    #[arg(long)]
    k_max: Option<usize>,

    #[arg(long, default_value_t = 1, requires = "k_max")]
    k_min: usize,

    /// Seeding interval.
    #[arg(long, default_value_t = 1)]
    delta: u64,

    /// Initial age (the mean when `--a0-random` is set).
    #[arg(long, default_value_t = 1)]
    a0: u64,

    /// Draw every node's initial age uniformly from `[1, 2 a0 - 1]`.
    #[arg(long)]
    a0_random: bool,

    /// `auto`, `last-seed`, or a fixed integer T.
    #[arg(long, default_value = "auto", value_parser = parse_horizon)]
    horizon: HorizonMode,

    #[arg(long, default_value_t = 1)]
    seeds_per_round: usize,

    #[arg(long, value_enum, default_value = "unit")]
    delay_mode: DelayMode,

    /// Trials per point for randomized settings.
    #[arg(long, default_value_t = 10)]
    trials: usize,

    #[arg(long, default_value_t = 0)]
    rng_seed: u64,

    /// CSV destination; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Drop nodes without edges after id filtering.
    #[arg(long)]
    drop_isolated: bool,

    /// Keep only node ids in `LO:HI` (inclusive).
    #[arg(long, value_parser = parse_id_range)]
    id_range: Option<(u64, u64)>,

    /// Cyclic candidate placement on the diameter path.
    #[arg(long, value_enum, default_value = "formula")]
    placement: PlacementArg,

    /// Fill the runtime column; rows are then no longer reproducible.
    #[arg(long)]
    record_runtime: bool,
}

fn parse_horizon(s: &str) -> Result<HorizonMode, String> {
    match s {
        "auto" => Ok(HorizonMode::Auto),
        "last-seed" => Ok(HorizonMode::LastSeed),
        _ => s
            .parse::<u64>()
            .map(HorizonMode::Fixed)
            .map_err(|_| format!("expected `auto`, `last-seed` or an integer, got `{s}`")),
    }
}

fn parse_id_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected `LO:HI`, got `{s}`"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("invalid lower id `{lo}`"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("invalid upper id `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

impl Cli {
    pub fn into_config(self) -> Result<(ExperimentConfig, Option<PathBuf>), HarnessError> {
        let k_values = match self.k_max {
            Some(max) if max < self.k_min => {
                return Err(HarnessError::config("k-max", format!("{max} is below k-min {}", self.k_min)))
            }
            Some(max) => (self.k_min..=max).collect(),
            None if self.k.is_empty() => {
                return Err(HarnessError::config("k", "give --k or --k-max"));
            }
            None => self.k,
        };
        let cfg = ExperimentConfig {
            graph_path: self.graph,
            load: LoadOptions { drop_isolated: self.drop_isolated, id_range: self.id_range },
            algorithms: self.algorithm,
            objective: self.objective,
            k_values,
            delta: self.delta,
            a0: if self.a0_random { InitialAgeSpec::RandomMean(self.a0) } else { InitialAgeSpec::Fixed(self.a0) },
            horizon: self.horizon,
            seeds_per_round: self.seeds_per_round,
            delay_mode: self.delay_mode,
            trials: self.trials,
            rng_seed: self.rng_seed,
            placement: match self.placement {
                PlacementArg::Formula => Placement::Formula,
                PlacementArg::Tiled => Placement::Tiled,
            },
            record_runtime: self.record_runtime,
        };
        cfg.validate()?;
        Ok((cfg, self.output))
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let (cfg, output) = cli.into_config()?;
    let rows = run_experiment(&cfg)?;
    match output {
        Some(path) => {
            let file = File::create(&path)?;
            let mut sink = BufWriter::new(file);
            emit_csv(&rows, &mut sink)?;
            sink.flush()?;
        }
        None => emit_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the sweep and returns
/// the process exit code: 0 on success, 1 for invalid input, 2 for I/O
/// failures.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
