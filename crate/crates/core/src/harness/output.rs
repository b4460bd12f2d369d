use std::io::Write;

use super::{ExperimentRow, HarnessError};

/// Column order of [`emit_csv`].
pub const CSV_HEADER: [&str; 18] = [
    "algorithm",
    "k",
    "delta",
    "seeds_per_round",
    "peak",
    "avg",
    "lb_peak",
    "lb_avg",
    "peak_ratio",
    "avg_ratio",
    "runtime_ms",
    "rng_seed",
    "horizon",
    "trials",
    "peak_std",
    "avg_std",
    "peak_ratio_std",
    "avg_ratio_std",
];

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

/// Writes a header and one record per row. Floats carry six decimals;
/// absent values (runtime unless recorded, spreads of deterministic runs)
/// are empty fields.
pub fn emit_csv<W: Write>(rows: &[ExperimentRow], sink: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let spread = |f: fn(&super::TrialSpread) -> f64| r.spread.as_ref().map(|s| fixed(f(s))).unwrap_or_default();
        w.write_record([
            r.algorithm.name().to_string(),
            r.k.to_string(),
            r.delta.to_string(),
            r.seeds_per_round.to_string(),
            fixed(r.peak),
            fixed(r.avg),
            fixed(r.lb_peak),
            fixed(r.lb_avg),
            fixed(r.peak_ratio),
            fixed(r.avg_ratio),
            r.runtime_ms.map(fixed).unwrap_or_default(),
            r.rng_seed.to_string(),
            r.horizon.to_string(),
            r.trials.to_string(),
            spread(|s| s.peak),
            spread(|s| s.avg),
            spread(|s| s.peak_ratio),
            spread(|s| s.avg_ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}
