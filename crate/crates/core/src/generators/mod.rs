// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded generators for the test processes.
//!
//! Every random source draws from its own ChaCha20 stream keyed by the seed,
//! so outputs are reproducible across platforms and independent across
//! segments and sources.

mod piecewise;

pub use piecewise::{gen_piecewise, PiecewiseSpec, SegmentSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ChestError, Result};
use crate::series::Series;

/// Rotation parameter of the first process in the long-range experiments.
#[allow(clippy::excessive_precision)]
pub const BETA_1: f64 = 0.452341643253462432;
/// Rotation parameter of the second process in the long-range experiments.
#[allow(clippy::excessive_precision)]
pub const BETA_2: f64 = 0.6345354645623456234234;

/// A stationary ergodic process that can be sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessSpec {
    /// I.i.d. Bernoulli(p) on {0, 1}.
    Bernoulli { p: f64 },
    /// Thresholded orbit of the rotation `r -> r + beta mod 1`.
    IrrationalRotation { beta: f64 },
    /// A rotation selecting between two uniform laws.
    HiddenIrrationalRotation {
        beta: f64,
        #[serde(default = "default_u_range")]
        u_range: (f64, f64),
        #[serde(default = "default_v_range")]
        v_range: (f64, f64),
    },
}

fn default_u_range() -> (f64, f64) {
    (0.0, 1.0)
}

fn default_v_range() -> (f64, f64) {
    (0.9, 1.9)
}

impl ProcessSpec {
    pub fn hidden_rotation(beta: f64) -> Self {
        Self::HiddenIrrationalRotation {
            beta,
            u_range: default_u_range(),
            v_range: default_v_range(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ProcessSpec::Bernoulli { p } => check_probability(p),
            ProcessSpec::IrrationalRotation { beta } => check_beta(beta),
            ProcessSpec::HiddenIrrationalRotation {
                beta,
                u_range,
                v_range,
            } => {
                check_beta(beta)?;
                for (name, (lo, hi)) in [("u_range", u_range), ("v_range", v_range)] {
                    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                        return Err(ChestError::param(format!(
                            "{name} must satisfy lo < hi, got ({lo}, {hi})"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Draws `len` values using the three streams starting at `stream`.
    pub(crate) fn sample(&self, len: usize, seed: u64, stream: u64) -> Result<Vec<f64>> {
        self.validate()?;
        let values = match *self {
            ProcessSpec::Bernoulli { p } => {
                let mut rng = stream_rng(seed, stream);
                (0..len)
                    .map(|_| f64::from(u8::from(rng.gen::<f64>() < p)))
                    .collect()
            }
            ProcessSpec::IrrationalRotation { beta } => {
                let r0 = stream_rng(seed, stream).gen::<f64>();
                irrational_rotation_from(beta, r0, len)
            }
            ProcessSpec::HiddenIrrationalRotation {
                beta,
                u_range,
                v_range,
            } => {
                let r0 = stream_rng(seed, stream).gen::<f64>();
                let y = irrational_rotation_from(beta, r0, len);
                let u = uniform_draws(seed, stream + 1, u_range, len);
                let v = uniform_draws(seed, stream + 2, v_range, len);
                hidden_rotation_from(&y, &u, &v)
            }
        };
        Ok(values)
    }
}

/// Random streams reserved per segment: one per source (start, U, V).
pub(crate) const STREAMS_PER_SEGMENT: u64 = 3;

fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn uniform_draws(seed: u64, stream: u64, (lo, hi): (f64, f64), len: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream);
    (0..len)
        .map(|_| lo + (hi - lo) * rng.gen::<f64>())
        .collect()
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ChestError::param(format!(
            "Bernoulli parameter must lie in [0, 1], got {p}"
        )))
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(ChestError::param(format!(
            "rotation parameter must lie in (0, 1), got {beta}"
        )))
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        Err(ChestError::param("sample length must be at least 1"))
    } else {
        Ok(())
    }
}

pub fn gen_bernoulli(p: f64, len: usize, seed: u64) -> Result<Series> {
    check_len(len)?;
    Series::new(ProcessSpec::Bernoulli { p }.sample(len, seed, 0)?)
}

/// Binary irrational rotation with a random start drawn from `seed`.
pub fn gen_irrational_rotation(beta: f64, len: usize, seed: u64) -> Result<Series> {
    check_len(len)?;
    Series::new(ProcessSpec::IrrationalRotation { beta }.sample(len, seed, 0)?)
}

/// Hidden irrational rotation with the default uniform ranges.
pub fn gen_hidden_ir(beta: f64, len: usize, seed: u64) -> Result<Series> {
    check_len(len)?;
    Series::new(ProcessSpec::hidden_rotation(beta).sample(len, seed, 0)?)
}

/// Rotation orbit from a fixed start `r0`: emits `1{r_i >= 0.5}` for
/// `r_i = r_{i-1} + beta mod 1`, `i = 1..=len`. `r0` itself is not emitted.
pub fn irrational_rotation_from(beta: f64, r0: f64, len: usize) -> Vec<f64> {
    let mut r = r0;
    (0..len)
        .map(|_| {
            r += beta;
            r -= r.floor();
            f64::from(u8::from(r >= 0.5))
        })
        .collect()
}

/// Mixes a binary driver with two value sources: `u_i (1 − y_i) + v_i y_i`.
///
/// # Panics
///
/// If the three slices differ in length.
pub fn hidden_rotation_from(y: &[f64], u: &[f64], v: &[f64]) -> Vec<f64> {
    assert!(
        y.len() == u.len() && y.len() == v.len(),
        "source lengths differ"
    );
    y.iter()
        .zip(u.iter().zip(v))
        .map(|(&y, (&u, &v))| u * (1.0 - y) + v * y)
        .collect()
}

/// Running mean over windows of `window` values, "valid" convolution mode:
/// output length is `n - window + 1`.
pub fn running_mean(x: &[f64], window: usize) -> Result<Series> {
    if window == 0 || window > x.len() {
        return Err(ChestError::param(format!(
            "running-mean window must be in 1..={}, got {window}",
            x.len()
        )));
    }
    let scale = window as f64;
    Series::new(
        x.windows(window)
            .map(|w| w.iter().sum::<f64>() / scale)
            .collect(),
    )
}
