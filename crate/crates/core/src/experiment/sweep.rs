// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::baseline::baseline_mean_cusum;
use super::config::{EstimatorKind, ExperimentConfig};
use super::metric::estimation_error;
use crate::distance::DistanceParams;
use crate::error::{ChestError, Result};
use crate::estimators::{find_changepoints, list_estimator};
use crate::generators::{gen_piecewise, running_mean};

/// One estimator applied to one generated sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub n: usize,
    pub iteration: usize,
    pub seed: u64,
    pub estimator: EstimatorKind,
    pub true_taus: Vec<usize>,
    pub est_taus: Vec<usize>,
    pub error: f64,
    pub millis: f64,
}

/// Mean and median error of one estimator at one sample length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregatePoint {
    pub estimator: EstimatorKind,
    pub n: usize,
    pub mean_error: f64,
    pub median_error: f64,
    pub iters: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Ordered by n, then iteration, then estimator as listed in the config.
    pub records: Vec<RunRecord>,
    /// Ordered by estimator as listed in the config, then n.
    pub points: Vec<AggregatePoint>,
}

/// Seed of one run, a function of the base seed, `n` and the iteration only.
pub fn run_seed(base: u64, n: usize, iteration: usize) -> u64 {
    let mut z = base;
    for word in [n as u64, iteration as u64] {
        z = splitmix64(z ^ splitmix64(word));
    }
    z
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs every (n, iteration) pair, possibly in parallel, and aggregates.
///
/// All estimators see the same sample within a run. An estimator that fails
/// on a run is scored 1 with an empty estimate.
pub fn run_sweep(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let specs = config
        .n_values
        .iter()
        .map(|&n| config.spec_for(n))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|i| (0..config.iterations).map(move |it| (i, it)))
        .collect();
    let records: Vec<Vec<RunRecord>> = jobs
        .par_iter()
        .map(|&(i, iteration)| {
            let n = config.n_values[i];
            let seed = run_seed(config.seed, n, iteration);
            let (series, true_taus) = gen_piecewise(&specs[i], seed)?;
            let x = match config.running_mean {
                Some(window) => running_mean(&series, window)?.into_inner(),
                None => series.into_inner(),
            };
            Ok(config
                .estimators
                .iter()
                .map(|&estimator| {
                    let start = Instant::now();
                    let est = estimate(config, estimator, &x, true_taus.len());
                    let millis = start.elapsed().as_secs_f64() * 1e3;
                    let (est_taus, error) = match est {
                        Ok(est) => match estimation_error(&true_taus, &est, n) {
                            Ok(error) => (est, error),
                            Err(_) => (est, 1.0),
                        },
                        Err(_) => (Vec::new(), 1.0),
                    };
                    RunRecord {
                        n,
                        iteration,
                        seed,
                        estimator,
                        true_taus: true_taus.clone(),
                        est_taus,
                        error,
                        millis,
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let records: Vec<RunRecord> = records.into_iter().flatten().collect();

    let mut points = Vec::new();
    for &estimator in &config.estimators {
        for &n in &config.n_values {
            let errors: Vec<f64> = records
                .iter()
                .filter(|r| r.estimator == estimator && r.n == n)
                .map(|r| r.error)
                .collect();
            points.push(AggregatePoint {
                estimator,
                n,
                mean_error: mean(&errors),
                median_error: median(&errors),
                iters: errors.len(),
            });
        }
    }
    Ok(ExperimentResult {
        config: config.clone(),
        records,
        points,
    })
}

fn estimate(
    config: &ExperimentConfig,
    estimator: EstimatorKind,
    x: &[f64],
    true_count: usize,
) -> Result<Vec<usize>> {
    let params = || {
        config
            .distance
            .clone()
            .unwrap_or_else(|| DistanceParams::for_series(x))
    };
    match estimator {
        EstimatorKind::List => {
            let list = list_estimator(x, config.alpha, &params())?;
            let mut taus: Vec<usize> = list.indices().into_iter().take(true_count).collect();
            taus.sort_unstable();
            taus.dedup();
            Ok(taus)
        }
        EstimatorKind::Full => find_changepoints(x, config.alpha, config.process_count, &params()),
        EstimatorKind::Baseline => baseline_mean_cusum(x, config.baseline_max_changes),
    }
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

const CSV_HEADER: [&str; 8] = [
    "n",
    "iteration",
    "seed",
    "estimator",
    "true_taus",
    "est_taus",
    "error",
    "millis",
];

fn join(taus: &[usize]) -> String {
    taus.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

impl ExperimentResult {
    /// Appends one row per run, writing the header if the file is new or empty.
    pub fn append_csv(&self, path: &Path) -> Result<()> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| io_error(path, e))?;
        let fresh = file.metadata().map_err(|e| io_error(path, e))?.len() == 0;
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(file);
        let csv_error = |e: csv::Error| ChestError::io(format!("{}: {e}", path.display()));
        if fresh {
            writer.write_record(CSV_HEADER).map_err(csv_error)?;
        }
        for r in &self.records {
            writer
                .write_record([
                    r.n.to_string(),
                    r.iteration.to_string(),
                    r.seed.to_string(),
                    r.estimator.name().to_string(),
                    join(&r.true_taus),
                    join(&r.est_taus),
                    r.error.to_string(),
                    format!("{:.3}", r.millis),
                ])
                .map_err(csv_error)?;
        }
        writer.flush().map_err(|e| io_error(path, e))
    }

    pub fn aggregate_json(&self) -> serde_json::Value {
        serde_json::json!({ "points": self.points, "config": self.config })
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(&self.aggregate_json())
            .map_err(|e| ChestError::io(e.to_string()))?;
        text.push('\n');
        std::fs::File::create(path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .map_err(|e| io_error(path, e))
    }

    /// Plain-text table of the aggregates.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<10} {:>8} {:>6} {:>12} {:>12}\n",
            "estimator", "n", "iters", "mean", "median"
        );
        for p in &self.points {
            out.push_str(&format!(
                "{:<10} {:>8} {:>6} {:>12.6} {:>12.6}\n",
                p.estimator.name(),
                p.n,
                p.iters,
                p.mean_error,
                p.median_error
            ));
        }
        out
    }
}

fn io_error(path: &Path, e: std::io::Error) -> ChestError {
    ChestError::io(format!("{}: {e}", path.display()))
}
