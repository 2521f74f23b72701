// SPDX-License-Identifier: MIT OR Apache-2.0

//! Error metric, mean-change baseline and seeded experiment sweeps.

mod baseline;
mod config;
mod metric;
mod sweep;

pub use baseline::baseline_mean_cusum;
pub use config::{EstimatorKind, ExperimentConfig};
pub use metric::estimation_error;
pub use sweep::{run_seed, run_sweep, AggregatePoint, ExperimentResult, RunRecord};
