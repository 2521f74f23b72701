// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::distance::{empirical_distance, DistanceParams, SplitScanner};
use crate::error::{ChestError, Result};

/// Number of coarse evaluations the default Φ scan aims for.
const COARSE_POINTS: usize = 2000;

/// How [`phi_with_scan`] searches the split range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhiScan {
    /// Stride `max(1, ceil(L / 2000))` over the `L` admissible splits, then
    /// stride 1 within one stride of the best coarse split.
    #[default]
    CoarseToFine,
    /// Every admissible split.
    Exhaustive,
    /// Coarse-to-fine with an explicit coarse stride.
    Stride(usize),
}

impl PhiScan {
    fn stride(self, splits: usize) -> usize {
        match self {
            PhiScan::CoarseToFine => splits.div_ceil(COARSE_POINTS).max(1),
            PhiScan::Exhaustive => 1,
            PhiScan::Stride(s) => s.max(1),
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(ChestError::param(format!(
            "min distance must lie in (0, 1), got {alpha}"
        )))
    }
}

/// Intra-segment score: distance between the two halves of `x[a..b]`,
/// split at `floor((a + b) / 2)`.
pub fn delta(x: &[f64], a: usize, b: usize, params: &DistanceParams) -> Result<f64> {
    if a >= b || b > x.len() || b - a < 2 {
        return Err(ChestError::param(format!(
            "segment {a}..{b} must hold at least 2 values within a sample of length {}",
            x.len()
        )));
    }
    let mid = (a + b) / 2;
    empirical_distance(&x[a..mid], &x[mid..b], params)
}

/// Single-changepoint estimate in `[a, b]` with the default scan.
pub fn phi(x: &[f64], a: usize, b: usize, alpha: f64, params: &DistanceParams) -> Result<usize> {
    phi_with_scan(x, a, b, alpha, params, PhiScan::default())
}

/// Split `t ∈ [a, b]` maximizing the distance between `x[lo..t]` and
/// `x[t..hi]`, where `lo = a − ceil(nα)` and `hi = b + floor(nα)` are clamped
/// to the sample. Splits that would leave a side empty are skipped. Ties go
/// to the smallest `t`.
pub fn phi_with_scan(
    x: &[f64],
    a: usize,
    b: usize,
    alpha: f64,
    params: &DistanceParams,
    scan: PhiScan,
) -> Result<usize> {
    check_alpha(alpha)?;
    let n = x.len();
    if a > b || b > n {
        return Err(ChestError::param(format!(
            "split range {a}..={b} is empty or exceeds the sample length {n}"
        )));
    }
    let reach = n as f64 * alpha;
    let lo = a.saturating_sub(reach.ceil() as usize);
    let hi = (b + reach.floor() as usize).min(n);
    let first = a.max(lo + 1);
    let last = b.min(hi.saturating_sub(1));
    if first > last {
        return Err(ChestError::param(format!(
            "no split in {a}..={b} leaves both sides nonempty"
        )));
    }

    let scanner = SplitScanner::new(&x[lo..hi], params)?;
    let stride = scan.stride(last - first + 1);
    let mut coarse: Vec<usize> = (first..=last).step_by(stride).collect();
    if *coarse.last().expect("nonempty range") != last {
        coarse.push(last);
    }
    let (mut best, mut best_score) = argmax(&scanner, &coarse, lo)?;
    if stride > 1 {
        let fine: Vec<usize> =
            (best.saturating_sub(stride).max(first)..=(best + stride).min(last)).collect();
        let (t, score) = argmax(&scanner, &fine, lo)?;
        if score > best_score || (score == best_score && t < best) {
            best = t;
            best_score = score;
        }
    }
    debug_assert!(best_score >= 0.0);
    Ok(best)
}

/// First split with the highest score. `splits` are absolute indices.
fn argmax(scanner: &SplitScanner<'_>, splits: &[usize], offset: usize) -> Result<(usize, f64)> {
    let relative: Vec<usize> = splits.iter().map(|t| t - offset).collect();
    let scores = scanner.scores(&relative)?;
    let mut best = (splits[0], scores[0]);
    for (&t, &score) in splits.iter().zip(&scores).skip(1) {
        if score > best.1 {
            best = (t, score);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(m: usize) -> DistanceParams {
        DistanceParams::discrete(2).with_max_word_len(m)
    }

    fn step(len: usize) -> Vec<f64> {
        (0..2 * len)
            .map(|i| f64::from(u8::from(i >= len)))
            .collect()
    }

    #[test]
    fn delta_examples() {
        let zeros = vec![0.0; 100];
        assert_eq!(delta(&zeros, 0, 100, &binary(3)).unwrap(), 0.0);
        assert_eq!(
            delta(&zeros, 13, 77, &DistanceParams::discrete(2)).unwrap(),
            0.0
        );
        assert_eq!(delta(&step(50), 0, 100, &binary(1)).unwrap(), 1.0);
        let alternating: Vec<f64> = (0..100).map(|i| (i % 2) as f64).collect();
        assert!(delta(&alternating, 0, 100, &binary(4)).unwrap() <= 0.1);
    }

    #[test]
    fn delta_rejects_short_segments() {
        let x = vec![0.0; 10];
        assert!(delta(&x, 3, 4, &binary(1)).is_err());
        assert!(delta(&x, 4, 4, &binary(1)).is_err());
        assert!(delta(&x, 5, 11, &binary(1)).is_err());
    }

    #[test]
    fn phi_finds_step() {
        let x = step(50);
        for scan in [
            PhiScan::Exhaustive,
            PhiScan::CoarseToFine,
            PhiScan::Stride(4),
        ] {
            assert_eq!(
                phi_with_scan(&x, 40, 60, 0.2, &DistanceParams::discrete(2), scan).unwrap(),
                50
            );
        }
    }

    #[test]
    fn phi_ties_go_to_smallest_split() {
        let x = vec![1.0; 100];
        assert_eq!(
            phi(&x, 30, 45, 0.1, &DistanceParams::discrete(2)).unwrap(),
            30
        );
        // Left edge clamps: t = 0 would leave the left side empty.
        assert_eq!(
            phi(&x, 0, 10, 0.1, &DistanceParams::discrete(2)).unwrap(),
            1
        );
    }

    #[test]
    fn phi_validates_arguments() {
        let x = vec![0.0; 20];
        let p = DistanceParams::discrete(2);
        assert!(phi(&x, 5, 4, 0.1, &p).is_err());
        assert!(phi(&x, 5, 8, 0.0, &p).is_err());
        assert!(phi(&x, 5, 8, 1.0, &p).is_err());
        assert!(phi(&x, 5, 21, 0.1, &p).is_err());
    }
}
