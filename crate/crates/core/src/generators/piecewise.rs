// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ProcessSpec, STREAMS_PER_SEGMENT};
use crate::error::{ChestError, Result};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub len: usize,
    #[serde(rename = "proc")]
    pub process: String,
}

/// A piecewise-stationary sample: consecutive segments, each drawn from a
/// named process. Consecutive segments must use different processes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseSpec {
    pub segments: Vec<SegmentSpec>,
    pub processes: BTreeMap<String, ProcessSpec>,
}

impl PiecewiseSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)
            .map_err(|e| ChestError::validation(format!("malformed piecewise spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("piecewise spec serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.segments.is_empty() {
            return Err(ChestError::validation("spec has no segments"));
        }
        for (i, segment) in self.segments.iter().enumerate() {
            if segment.len == 0 {
                return Err(ChestError::validation(format!("segment {i} has length 0")));
            }
            if !self.processes.contains_key(&segment.process) {
                return Err(ChestError::validation(format!(
                    "segment {i} references unknown process {:?}",
                    segment.process
                )));
            }
        }
        if let Some(i) = self
            .segments
            .windows(2)
            .position(|w| w[0].process == w[1].process)
        {
            return Err(ChestError::validation(format!(
                "segments {i} and {} both use process {:?}; consecutive segments must differ",
                i + 1,
                self.segments[i].process
            )));
        }
        for (name, process) in &self.processes {
            process
                .validate()
                .map_err(|e| ChestError::validation(format!("process {name:?}: {e}")))?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.segments.iter().map(|s| s.len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ground-truth changepoints: prefix lengths before each segment change.
    pub fn changepoints(&self) -> Vec<usize> {
        self.segments
            .iter()
            .scan(0, |end, s| {
                *end += s.len;
                Some(*end)
            })
            .take(self.segments.len().saturating_sub(1))
            .collect()
    }

    /// Number of distinct processes the segments use.
    pub fn process_count(&self) -> usize {
        self.segments
            .iter()
            .map(|s| s.process.as_str())
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Minimum normalized segment length.
    pub fn lambda(&self) -> f64 {
        let min = self.segments.iter().map(|s| s.len).min().unwrap_or(0);
        min as f64 / self.len().max(1) as f64
    }
}

/// Draws every segment independently and concatenates them.
///
/// Segments sharing a process still get fresh randomness.
pub fn gen_piecewise(spec: &PiecewiseSpec, seed: u64) -> Result<(Series, Vec<usize>)> {
    spec.validate()?;
    let mut values = Vec::with_capacity(spec.len());
    for (i, segment) in spec.segments.iter().enumerate() {
        let process = &spec.processes[&segment.process];
        values.extend(process.sample(segment.len, seed, i as u64 * STREAMS_PER_SEGMENT)?);
    }
    Ok((Series::new(values)?, spec.changepoints()))
}
