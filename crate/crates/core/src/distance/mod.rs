// SPDX-License-Identifier: MIT OR Apache-2.0

//! Empirical distributional distance between samples.
//!
//! The distance compares sliding-window word frequencies at every word
//! length `m <= m_n` and, for real-valued data, every dyadic quantization
//! depth `l <= l_n`:
//!
//! ```text
//! d(x, y) = Σ_l Σ_m w_m · w_l · Σ_B |ν_x(B) − ν_y(B)|
//! ```
//!
//! where `ν(B)` is the fraction of windows of length `m` whose quantized form
//! is `B`. Only words observed in one of the samples are visited. Each
//! per-(m, l) sum is computed as an exact integer over a common denominator,
//! which makes the result bit-identical under swapping the arguments.

mod frequency;
mod params;
mod scan;
mod words;

pub use frequency::{empirical_frequencies, FrequencyTable};
pub use params::{DistanceParams, Mode, Schedule, Weights, QUANT_DEPTH_CAP, WORD_LEN_CAP};
pub use scan::SplitScanner;

use crate::error::{ChestError, Result};
use params::check_range;
use words::{frequency_l1, pair_discrepancy, WordIds};

/// Maps each value to its dyadic cell `0..2^depth` over `[lo, hi)`.
///
/// Values outside the range are clamped into the first or last cell.
pub fn quantize(values: &[f64], depth: usize, range: (f64, f64)) -> Result<Vec<u32>> {
    let (lo, hi) = range;
    check_range(lo, hi)?;
    if depth == 0 || depth > QUANT_DEPTH_CAP {
        return Err(ChestError::param(format!(
            "quantization depth must be in 1..={QUANT_DEPTH_CAP}, got {depth}"
        )));
    }
    Ok(dyadic_cells(values, lo, hi, depth))
}

fn dyadic_cells(values: &[f64], lo: f64, hi: f64, depth: usize) -> Vec<u32> {
    let cells = (1u64 << depth) as f64;
    let top = (1u32 << depth) - 1;
    let width = hi - lo;
    values
        .iter()
        .map(|&v| {
            let c = ((v - lo) / width * cells).floor();
            if c <= 0.0 {
                0
            } else if c >= top as f64 {
                top
            } else {
                c as u32
            }
        })
        .collect()
}

/// Per-depth symbol streams for a comparison.
pub(crate) enum Symbols {
    /// One stream per input sample.
    Discrete(Vec<Vec<u32>>),
    /// Cells at the deepest level; coarser depths are right shifts.
    Real {
        deepest: Vec<Vec<u32>>,
        depth: usize,
    },
}

impl Symbols {
    /// Streams at quantization depth `l` (1-based; discrete mode has only 1).
    pub fn at_depth(&self, l: usize) -> Vec<Vec<u32>> {
        match self {
            Symbols::Discrete(streams) => streams.clone(),
            Symbols::Real { deepest, depth } => {
                let shift = depth - l;
                deepest
                    .iter()
                    .map(|s| s.iter().map(|c| c >> shift).collect())
                    .collect()
            }
        }
    }
}

pub(crate) fn symbolize(
    samples: &[&[f64]],
    params: &DistanceParams,
    depth: usize,
) -> Result<Symbols> {
    for (which, sample) in samples.iter().enumerate() {
        if sample.is_empty() {
            return Err(ChestError::input(format!("sample {which} is empty")));
        }
        if let Some(v) = sample.iter().find(|v| !v.is_finite()) {
            return Err(ChestError::input(format!("sample {which} contains {v}")));
        }
    }
    match params.mode {
        Mode::Discrete { alphabet } => samples
            .iter()
            .map(|s| discrete_symbols(s, alphabet))
            .collect::<Result<Vec<_>>>()
            .map(Symbols::Discrete),
        Mode::Real => {
            let (lo, hi) = match params.value_range {
                Some(range) => range,
                None => observed_range(samples),
            };
            let deepest = samples
                .iter()
                .map(|s| dyadic_cells(s, lo, hi, depth))
                .collect();
            Ok(Symbols::Real { deepest, depth })
        }
    }
}

pub(crate) fn discrete_symbols(values: &[f64], alphabet: u32) -> Result<Vec<u32>> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v >= 0.0 && v.fract() == 0.0 && v < alphabet as f64 {
                Ok(v as u32)
            } else {
                Err(ChestError::input(format!(
                    "value {v} at index {i} is not a symbol of the discrete alphabet of size {alphabet}"
                )))
            }
        })
        .collect()
}

/// Min/max over all samples. A constant input gets the unit range above its
/// value so that everything lands in cell 0.
pub(crate) fn observed_range(samples: &[&[f64]]) -> (f64, f64) {
    let (lo, hi) = samples
        .iter()
        .flat_map(|s| s.iter())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if lo < hi {
        (lo, hi)
    } else {
        (lo, lo + 1.0)
    }
}

/// Empirical distributional distance between two samples.
///
/// The schedules resolve against the combined length `x.len() + y.len()`.
/// The result lies in `[0, 2]` for the default weights.
pub fn empirical_distance(x: &[f64], y: &[f64], params: &DistanceParams) -> Result<f64> {
    let plan = params.plan(x.len() + y.len())?;
    let symbols = symbolize(&[x, y], params, plan.max_depth())?;
    let mut scratch = Vec::new();
    let mut total = 0.0;
    for (l, &depth_weight) in plan.depth_weights.iter().enumerate() {
        let streams = symbols.at_depth(l + 1);
        let mut words = WordIds::new(vec![&streams[0], &streams[1]]);
        for (m, &word_weight) in plan.word_weights.iter().enumerate() {
            let m = m + 1;
            let tx = (x.len() + 1).saturating_sub(m);
            let ty = (y.len() + 1).saturating_sub(m);
            let discrepancy = if words.level() > 0 && words.all_unique() {
                // Longer words stay unique: every window is its own pattern.
                2 * tx as u128 * ty as u128
            } else {
                words.advance();
                pair_discrepancy(&words, &mut scratch)
            };
            total += word_weight * depth_weight * frequency_l1(discrepancy, tx, ty);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(m: usize) -> DistanceParams {
        DistanceParams::discrete(2).with_max_word_len(m)
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(
            quantize(&[0.0, 0.5, 0.99], 1, (0.0, 1.0)).unwrap(),
            vec![0, 1, 1]
        );
        assert_eq!(
            quantize(&[0.0, 0.25, 0.5, 0.75], 2, (0.0, 1.0)).unwrap(),
            vec![0, 1, 2, 3]
        );
        // Clamped below and above.
        assert_eq!(quantize(&[-1.0, 2.0], 1, (0.0, 1.0)).unwrap(), vec![0, 1]);
        assert_eq!(quantize(&[1.0], 3, (0.0, 1.0)).unwrap(), vec![7]);
    }

    #[test]
    fn quantize_rejects_bad_range() {
        assert!(quantize(&[0.0], 1, (1.0, 0.0)).is_err());
        assert!(quantize(&[0.0], 1, (1.0, 1.0)).is_err());
        assert!(quantize(&[0.0], 0, (0.0, 1.0)).is_err());
    }

    #[test]
    fn identical_samples_are_at_distance_zero() {
        let x = [0.0, 1.0, 1.0, 0.0];
        assert_eq!(empirical_distance(&x, &x, &binary(3)).unwrap(), 0.0);
    }

    #[test]
    fn hand_computed_examples() {
        // m=1: 0.5·(0.5 + 0.5); m=2: 0.25·(2/3 + 1/3 + 1)
        let d = empirical_distance(&[0.0, 1.0, 0.0, 1.0], &[1.0; 4], &binary(2)).unwrap();
        assert_eq!(d, 1.0);
        let d = empirical_distance(&[0.0, 0.0], &[1.0, 1.0], &binary(1)).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn word_longer_than_a_sample_compares_against_zero() {
        // m=1: 0.5·(1 + 1); m=2: x has no windows, y's frequencies sum to 1.
        let d = empirical_distance(&[0.0], &[1.0, 1.0], &binary(2)).unwrap();
        assert_eq!(d, 1.0 + 0.25);
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let err = empirical_distance(&[0.0, 0.5], &[1.0], &binary(1)).unwrap_err();
        assert!(matches!(err, ChestError::InvalidInput(_)));
        assert!(empirical_distance(&[0.0, 2.0], &[1.0], &binary(1)).is_err());
        assert!(empirical_distance(&[], &[1.0], &binary(1)).is_err());
    }

    #[test]
    fn real_mode_uses_shared_range() {
        let params = DistanceParams::real()
            .with_max_word_len(1)
            .with_max_quant_depth(1);
        // Range (0, 4): cells {0,0} vs {1,1}.
        let d = empirical_distance(&[0.0, 1.0], &[3.0, 4.0], &params).unwrap();
        assert_eq!(d, 0.25 * 2.0);
        let d = empirical_distance(&[2.0, 2.0], &[2.0], &params).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn unique_word_shortcut_agrees_with_full_count() {
        // Alphabet 4, distinct symbols everywhere: unique from m = 1 on.
        let x = [0.0, 1.0, 2.0];
        let y = [3.0];
        let params = DistanceParams::discrete(4).with_max_word_len(4);
        let d = empirical_distance(&x, &y, &params).unwrap();
        // m=1,2: all-unique ⇒ term 2; m=2..4 for y and m=4 for x have no windows.
        let expected = 0.5 * 2.0 + 0.25 * 1.0 + 0.125 * 1.0 + 0.0625 * 0.0;
        assert_eq!(d, expected);
    }
}
