// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{ChestError, Result};

/// Largest word length any schedule may resolve to.
pub const WORD_LEN_CAP: usize = 20;
/// Largest quantization depth any schedule may resolve to.
pub const QUANT_DEPTH_CAP: usize = 16;

/// Largest alphabet [`DistanceParams::for_series`] will treat as discrete.
const AUTO_DISCRETE_MAX_ALPHABET: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    /// Values are symbols `0, 1, ..., alphabet - 1`.
    Discrete { alphabet: u32 },
    /// Values are reals, compared through dyadic cells of the value range.
    Real,
}

/// How a word-length or quantization-depth bound is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// `max(1, floor(log2 n))` for combined sample length `n`, capped.
    #[default]
    Auto,
    Fixed(usize),
}

impl Schedule {
    fn resolve(self, n: usize, cap: usize) -> usize {
        match self {
            Schedule::Auto => (n.max(1).ilog2() as usize).clamp(1, cap),
            Schedule::Fixed(v) => v,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weights {
    /// `w_j = 2^-j`.
    #[default]
    Geometric,
    /// `w_j = values[j - 1]`; must cover every index the schedules reach.
    Custom(Vec<f64>),
}

impl Weights {
    /// Weight of index `j >= 1`.
    pub fn weight(&self, j: usize) -> Option<f64> {
        debug_assert!(j >= 1);
        match self {
            Weights::Geometric => Some(0.5f64.powi(j as i32)),
            Weights::Custom(values) => values.get(j - 1).copied(),
        }
    }
}

/// Parameters of the empirical distributional distance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceParams {
    pub mode: Mode,
    #[serde(default)]
    pub max_word_len: Schedule,
    /// Ignored in discrete mode.
    #[serde(default)]
    pub max_quant_depth: Schedule,
    #[serde(default)]
    pub weights: Weights,
    /// Fixed quantization range; defaults to the min/max of the compared data.
    #[serde(default)]
    pub value_range: Option<(f64, f64)>,
}

impl DistanceParams {
    pub fn discrete(alphabet: u32) -> Self {
        Self::with_mode(Mode::Discrete { alphabet })
    }

    pub fn real() -> Self {
        Self::with_mode(Mode::Real)
    }

    fn with_mode(mode: Mode) -> Self {
        Self {
            mode,
            max_word_len: Schedule::Auto,
            max_quant_depth: Schedule::Auto,
            weights: Weights::Geometric,
            value_range: None,
        }
    }

    /// Picks discrete mode when every value is a small nonnegative integer
    /// (alphabet at most 16, at least 2), real mode otherwise.
    pub fn for_series(values: &[f64]) -> Self {
        let mut max_symbol = 0u32;
        for &v in values {
            if v < 0.0 || v.fract() != 0.0 || v >= AUTO_DISCRETE_MAX_ALPHABET as f64 {
                return Self::real();
            }
            max_symbol = max_symbol.max(v as u32);
        }
        Self::discrete((max_symbol + 1).max(2))
    }

    pub fn with_max_word_len(mut self, m: usize) -> Self {
        self.max_word_len = Schedule::Fixed(m);
        self
    }

    pub fn with_max_quant_depth(mut self, l: usize) -> Self {
        self.max_quant_depth = Schedule::Fixed(l);
        self
    }

    pub fn with_value_range(mut self, lo: f64, hi: f64) -> Self {
        self.value_range = Some((lo, hi));
        self
    }

    pub fn with_weights(mut self, weights: Weights) -> Self {
        self.weights = weights;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Mode::Discrete { alphabet } = self.mode {
            if alphabet < 2 {
                return Err(ChestError::param(format!(
                    "discrete alphabet size must be at least 2, got {alphabet}"
                )));
            }
        }
        match self.max_word_len {
            Schedule::Fixed(m) if m == 0 || m > WORD_LEN_CAP => {
                return Err(ChestError::param(format!(
                    "max word length must be in 1..={WORD_LEN_CAP}, got {m}"
                )));
            }
            _ => {}
        }
        match self.max_quant_depth {
            Schedule::Fixed(l) if l == 0 || l > QUANT_DEPTH_CAP => {
                return Err(ChestError::param(format!(
                    "max quantization depth must be in 1..={QUANT_DEPTH_CAP}, got {l}"
                )));
            }
            _ => {}
        }
        if let Weights::Custom(values) = &self.weights {
            if values.iter().any(|w| !w.is_finite() || *w <= 0.0) {
                return Err(ChestError::param(
                    "custom weights must be finite and positive",
                ));
            }
        }
        if let Some((lo, hi)) = self.value_range {
            check_range(lo, hi)?;
        }
        Ok(())
    }

    /// Resolves schedules and weights for a comparison whose two samples have
    /// `combined_len` values in total.
    pub(crate) fn plan(&self, combined_len: usize) -> Result<Plan> {
        self.validate()?;
        let word_len = self.max_word_len.resolve(combined_len, WORD_LEN_CAP);
        let word_weights = (1..=word_len)
            .map(|m| self.weight(m))
            .collect::<Result<Vec<_>>>()?;
        let depth_weights = match self.mode {
            Mode::Discrete { .. } => vec![1.0],
            Mode::Real => {
                let depth = self.max_quant_depth.resolve(combined_len, QUANT_DEPTH_CAP);
                (1..=depth)
                    .map(|l| self.weight(l))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(Plan {
            word_weights,
            depth_weights,
        })
    }

    fn weight(&self, j: usize) -> Result<f64> {
        self.weights
            .weight(j)
            .ok_or_else(|| ChestError::param(format!("custom weights do not cover index {j}")))
    }
}

pub(crate) fn check_range(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(ChestError::param(format!(
            "quantization range must satisfy lo < hi, got ({lo}, {hi})"
        )));
    }
    Ok(())
}

/// Resolved weights: `word_weights[m - 1]` and `depth_weights[l - 1]`.
///
/// Discrete mode has a single depth entry of weight 1.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub word_weights: Vec<f64>,
    pub depth_weights: Vec<f64>,
}

impl Plan {
    pub fn max_depth(&self) -> usize {
        self.depth_weights.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_schedule_is_floor_log2_with_caps() {
        assert_eq!(Schedule::Auto.resolve(1, 20), 1);
        assert_eq!(Schedule::Auto.resolve(3, 20), 1);
        assert_eq!(Schedule::Auto.resolve(8, 20), 3);
        assert_eq!(Schedule::Auto.resolve(60_000, 20), 15);
        assert_eq!(Schedule::Auto.resolve(1 << 30, 20), 20);
        assert_eq!(Schedule::Auto.resolve(1 << 30, 16), 16);
    }

    #[test]
    fn geometric_weights_sum_below_one() {
        let total: f64 = (1..=64)
            .map(|j| Weights::Geometric.weight(j).unwrap())
            .sum();
        assert!(total <= 1.0);
        assert_eq!(Weights::Geometric.weight(3), Some(0.125));
    }

    #[test]
    fn validation_rejects_out_of_range_settings() {
        assert!(DistanceParams::discrete(1).validate().is_err());
        assert!(DistanceParams::discrete(2)
            .with_max_word_len(0)
            .validate()
            .is_err());
        assert!(DistanceParams::discrete(2)
            .with_max_word_len(21)
            .validate()
            .is_err());
        assert!(DistanceParams::real()
            .with_max_quant_depth(17)
            .validate()
            .is_err());
        assert!(DistanceParams::real()
            .with_value_range(1.0, 1.0)
            .validate()
            .is_err());
        assert!(DistanceParams::real()
            .with_weights(Weights::Custom(vec![0.5, -0.1]))
            .validate()
            .is_err());
    }

    #[test]
    fn custom_weights_must_cover_schedule() {
        let params = DistanceParams::discrete(2)
            .with_max_word_len(3)
            .with_weights(Weights::Custom(vec![0.5, 0.25]));
        assert!(params.plan(100).is_err());
        let params = params.with_weights(Weights::Custom(vec![0.5, 0.25, 0.125]));
        assert_eq!(
            params.plan(100).unwrap().word_weights,
            vec![0.5, 0.25, 0.125]
        );
    }

    #[test]
    fn mode_detection() {
        assert_eq!(
            DistanceParams::for_series(&[0.0, 1.0, 1.0]).mode,
            Mode::Discrete { alphabet: 2 }
        );
        assert_eq!(
            DistanceParams::for_series(&[0.0, 0.0]).mode,
            Mode::Discrete { alphabet: 2 }
        );
        assert_eq!(
            DistanceParams::for_series(&[0.0, 3.0]).mode,
            Mode::Discrete { alphabet: 4 }
        );
        assert_eq!(DistanceParams::for_series(&[0.0, 0.5]).mode, Mode::Real);
        assert_eq!(DistanceParams::for_series(&[-1.0, 1.0]).mode, Mode::Real);
        assert_eq!(DistanceParams::for_series(&[0.0, 40.0]).mode, Mode::Real);
    }
}
