// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceParams;
use crate::error::{ChestError, Result};
use crate::generators::{PiecewiseSpec, ProcessSpec, SegmentSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    /// First κ list-estimator candidates, κ taken from the truth.
    List,
    /// Clustering-based changepoint estimator.
    Full,
    /// CUSUM binary segmentation for mean changes.
    Baseline,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::List => "list",
            EstimatorKind::Full => "full",
            EstimatorKind::Baseline => "baseline",
        }
    }
}

/// A sweep over sample lengths of one piecewise-stationary design.
///
/// Changepoints sit at `floor(c · n)` for each fraction `c` in `changes`;
/// segment `i` is drawn from process `sequence[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub processes: BTreeMap<String, ProcessSpec>,
    pub sequence: Vec<String>,
    pub changes: Vec<f64>,
    pub n_values: Vec<usize>,
    pub iterations: usize,
    pub alpha: f64,
    pub process_count: usize,
    pub estimators: Vec<EstimatorKind>,
    #[serde(default = "default_baseline_max_changes")]
    pub baseline_max_changes: usize,
    #[serde(default)]
    pub seed: u64,
    /// Optional running-mean window applied to every generated sample.
    #[serde(default)]
    pub running_mean: Option<usize>,
    /// Distance parameters; chosen per sample from its values when absent.
    #[serde(default)]
    pub distance: Option<DistanceParams>,
}

fn default_baseline_max_changes() -> usize {
    4
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)
            .map_err(|e| ChestError::validation(format!("malformed experiment config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Instantiates the design at sample length `n`.
    pub fn spec_for(&self, n: usize) -> Result<PiecewiseSpec> {
        let mut cuts: Vec<usize> = self
            .changes
            .iter()
            .map(|c| (c * n as f64).floor() as usize)
            .collect();
        cuts.insert(0, 0);
        cuts.push(n);
        let segments = cuts
            .windows(2)
            .zip(&self.sequence)
            .map(|(w, process)| SegmentSpec {
                len: w[1].saturating_sub(w[0]),
                process: process.clone(),
            })
            .collect();
        let spec = PiecewiseSpec {
            segments,
            processes: self.processes.clone(),
        };
        spec.validate()
            .map_err(|e| ChestError::validation(format!("design at n = {n}: {e}")))?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(ChestError::validation(msg));
        if self.changes.is_empty() {
            return fail("at least one change fraction is required".into());
        }
        if self.changes.iter().any(|c| !(*c > 0.0 && *c < 1.0))
            || self.changes.windows(2).any(|w| w[0] >= w[1])
        {
            return fail("change fractions must increase strictly within (0, 1)".into());
        }
        if self.sequence.len() != self.changes.len() + 1 {
            return fail(format!(
                "{} changes need {} processes in the sequence, got {}",
                self.changes.len(),
                self.changes.len() + 1,
                self.sequence.len()
            ));
        }
        if self.n_values.is_empty() || self.iterations == 0 || self.estimators.is_empty() {
            return fail("n_values, iterations and estimators must be nonempty".into());
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return fail(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if self.process_count == 0 || self.baseline_max_changes == 0 {
            return fail("process_count and baseline_max_changes must be at least 1".into());
        }
        if self.running_mean == Some(0) {
            return fail("running-mean window must be at least 1".into());
        }
        if let Some(params) = &self.distance {
            params.validate()?;
        }
        for &n in &self.n_values {
            let spec = self.spec_for(n)?;
            let lambda = spec.lambda();
            if self.alpha > lambda {
                return fail(format!(
                    "alpha {} exceeds the minimum normalized segment length {lambda} at n = {n}",
                    self.alpha
                ));
            }
        }
        Ok(())
    }
}
