// SPDX-License-Identifier: MIT OR Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::score::{check_alpha, delta, phi_with_scan, PhiScan};
use crate::distance::DistanceParams;
use crate::error::{ChestError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    /// Number of samples before the estimated change.
    pub index: usize,
    /// Score of the grid segment the estimate came from.
    pub score: f64,
}

/// Changepoint candidates in decreasing order of score.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateList {
    pub candidates: Vec<Candidate>,
    pub alpha: f64,
    pub n: usize,
}

impl CandidateList {
    pub fn indices(&self) -> Vec<usize> {
        self.candidates.iter().map(|c| c.index).collect()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Evenly spaced grid of `floor(αn/3)`-sample segments; a trailing partial
/// segment is merged into the last full one.
pub(crate) fn grid(n: usize, alpha: f64) -> Result<Vec<(usize, usize)>> {
    let width = (alpha * n as f64 / 3.0).floor() as usize;
    if width < 2 {
        return Err(ChestError::input(format!(
            "sample of length {n} is too short for min distance {alpha}: grid segments would hold {width} values"
        )));
    }
    let count = n / width;
    if count < 3 {
        return Err(ChestError::input(format!(
            "sample of length {n} yields only {count} grid segments for min distance {alpha}; need at least 3"
        )));
    }
    Ok((0..count)
        .map(|j| {
            let end = if j + 1 == count { n } else { (j + 1) * width };
            (j * width, end)
        })
        .collect())
}

/// Grid segments picked by the exclusion rule, in selection order.
///
/// The first and last segments start unavailable. Each round takes the
/// available segment with the highest score (leftmost on ties) and retires
/// every segment whose midpoint lies within `ceil(nα/2)` of its midpoint.
pub(crate) fn select_segments(
    segments: &[(usize, usize)],
    scores: &[f64],
    n: usize,
    alpha: f64,
) -> Vec<usize> {
    let radius = (n as f64 * alpha / 2.0).ceil() as usize;
    // Doubled midpoints keep the comparison in integers.
    let mid2 = |(start, end): (usize, usize)| start + end;
    let mut available: Vec<bool> = (0..segments.len())
        .map(|j| j > 0 && j + 1 < segments.len())
        .collect();
    let mut picked = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for j in (0..segments.len()).filter(|&j| available[j]) {
            if best.is_none_or(|b| scores[j] > scores[b]) {
                best = Some(j);
            }
        }
        let Some(chosen) = best else { break };
        picked.push(chosen);
        let center = mid2(segments[chosen]);
        for (j, &segment) in segments.iter().enumerate() {
            if mid2(segment).abs_diff(center) <= 2 * radius {
                available[j] = false;
            }
        }
    }
    picked
}

/// List estimator with the default Φ scan.
pub fn list_estimator(x: &[f64], alpha: f64, params: &DistanceParams) -> Result<CandidateList> {
    list_estimator_with_scan(x, alpha, params, PhiScan::default())
}

/// Scores grid segments, selects a well-separated subset by score and
/// refines each selected segment into a changepoint estimate.
///
/// Candidates come back sorted by score, highest first. For long enough
/// samples with `alpha` below the minimum normalized segment length, the
/// first κ candidates estimate the κ changepoints.
pub fn list_estimator_with_scan(
    x: &[f64],
    alpha: f64,
    params: &DistanceParams,
    scan: PhiScan,
) -> Result<CandidateList> {
    check_alpha(alpha)?;
    params.validate()?;
    let n = x.len();
    let segments = grid(n, alpha)?;
    let inner = 1..segments.len() - 1;
    let mut scores = vec![0.0; segments.len()];
    let inner_scores = segments[inner.clone()]
        .par_iter()
        .map(|&(a, b)| delta(x, a, b, params))
        .collect::<Result<Vec<_>>>()?;
    scores[inner].copy_from_slice(&inner_scores);

    let picked = select_segments(&segments, &scores, n, alpha);
    let mut candidates = picked
        .par_iter()
        .map(|&j| {
            let (a, b) = segments[j];
            Ok(Candidate {
                index: phi_with_scan(x, a, b, alpha, params, scan)?,
                score: scores[j],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by(|p, q| q.score.total_cmp(&p.score));
    Ok(CandidateList {
        candidates,
        alpha,
        n,
    })
}
