// SPDX-License-Identifier: MIT OR Apache-2.0

use super::cluster::{cluster_segments, Segmentation};
use super::list::list_estimator_with_scan;
use super::score::PhiScan;
use crate::distance::DistanceParams;
use crate::error::{ChestError, Result};

/// Changepoint estimator with the default Φ scan.
pub fn find_changepoints(
    x: &[f64],
    alpha: f64,
    process_count: usize,
    params: &DistanceParams,
) -> Result<Vec<usize>> {
    find_changepoints_with_scan(x, alpha, process_count, params, PhiScan::default())
}

/// Estimates changepoints given the number of distinct processes.
///
/// The list estimator's candidates cut the sample into segments, which are
/// clustered into `process_count` groups. A candidate between two segments
/// of the same cluster is redundant and dropped; the rest are returned in
/// increasing order.
pub fn find_changepoints_with_scan(
    x: &[f64],
    alpha: f64,
    process_count: usize,
    params: &DistanceParams,
    scan: PhiScan,
) -> Result<Vec<usize>> {
    if process_count == 0 {
        return Err(ChestError::param("process count must be at least 1"));
    }
    let list = list_estimator_with_scan(x, alpha, params, scan)?;
    let mut candidates = list.indices();
    candidates.sort_unstable();
    candidates.dedup();
    let segmentation = Segmentation::from_changepoints(x.len(), &candidates)?;
    if process_count > segmentation.len() {
        return Err(ChestError::input(format!(
            "process count {process_count} exceeds the {} segments formed by the candidates; \
             the sample or min distance is inconsistent with it",
            segmentation.len()
        )));
    }
    let clusters = cluster_segments(x, &segmentation, process_count, params)?;
    Ok(candidates
        .iter()
        .enumerate()
        .filter(|&(i, _)| clusters.labels[i] != clusters.labels[i + 1])
        .map(|(_, &tau)| tau)
        .collect())
}
