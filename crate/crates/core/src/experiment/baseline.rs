// SPDX-License-Identifier: MIT OR Apache-2.0

//! Mean-change baseline: binary segmentation on the CUSUM statistic with a
//! strengthened Schwarz criterion choosing the number of changes.
//!
//! This is a stand-in for an i.i.d.-consistent comparator. It only sees
//! changes in the mean.

use crate::error::{ChestError, Result};

/// Exponent of `ln n` in the per-change penalty.
const SSIC_EXPONENT: f64 = 1.01;

struct Prefix {
    sum: Vec<f64>,
}

impl Prefix {
    fn new(x: &[f64]) -> Self {
        let mut sum = Vec::with_capacity(x.len() + 1);
        sum.push(0.0);
        let mut acc = 0.0;
        for &v in x {
            acc += v;
            sum.push(acc);
        }
        Self { sum }
    }

    fn mean(&self, a: usize, b: usize) -> f64 {
        (self.sum[b] - self.sum[a]) / (b - a) as f64
    }

    /// Reduction in residual sum of squares from splitting `a..b` at `t`.
    fn gain(&self, a: usize, t: usize, b: usize) -> f64 {
        let (left, right) = ((t - a) as f64, (b - t) as f64);
        let diff = self.mean(a, t) - self.mean(t, b);
        left * right / (left + right) * diff * diff
    }

    /// Best split of `a..b` (smallest index on ties).
    fn best_split(&self, a: usize, b: usize) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for t in a + 1..b {
            let g = self.gain(a, t, b);
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((t, g));
            }
        }
        best
    }
}

/// Up to `max_changes` mean changepoints, in increasing order.
pub fn baseline_mean_cusum(x: &[f64], max_changes: usize) -> Result<Vec<usize>> {
    if max_changes == 0 {
        return Err(ChestError::param("max changes must be at least 1"));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(ChestError::input("series contains non-finite values"));
    }
    let n = x.len();
    if n < 2 {
        return Ok(Vec::new());
    }
    let prefix = Prefix::new(x);
    let mean = prefix.mean(0, n);
    let total_rss: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();

    // Nested models from greedy splitting: found[k] is the k+1-th change.
    let mut segments = vec![(0, n, prefix.best_split(0, n))];
    let mut found = Vec::new();
    let mut rss = vec![total_rss];
    while found.len() < max_changes {
        let Some((i, t, gain)) = segments
            .iter()
            .enumerate()
            .filter_map(|(i, &(_, _, split))| split.map(|(t, g)| (i, t, g)))
            .fold(None, |best: Option<(usize, usize, f64)>, cand| match best {
                Some(b) if b.2 >= cand.2 => Some(b),
                _ => Some(cand),
            })
        else {
            break;
        };
        if gain <= 0.0 {
            break;
        }
        let (a, b, _) = segments.remove(i);
        segments.push((a, t, prefix.best_split(a, t)));
        segments.push((t, b, prefix.best_split(t, b)));
        segments.sort_by_key(|s| s.0);
        found.push(t);
        rss.push((rss[rss.len() - 1] - gain).max(0.0));
    }

    let n_f = n as f64;
    let penalty = n_f.ln().powf(SSIC_EXPONENT);
    let criterion = |k: usize| {
        let variance = (rss[k] / n_f).max(f64::MIN_POSITIVE);
        n_f / 2.0 * variance.ln() + k as f64 * penalty
    };
    let best_k = (0..rss.len())
        .min_by(|&p, &q| criterion(p).total_cmp(&criterion(q)))
        .unwrap_or(0);
    let mut chosen = found[..best_k].to_vec();
    chosen.sort_unstable();
    Ok(chosen)
}
