// SPDX-License-Identifier: MIT OR Apache-2.0

//! Retrospective estimation of multiple changepoints in the distribution of
//! piecewise-stationary time series.
//!
//! The segments of a sample may come from arbitrary stationary ergodic
//! processes: long-range dependence is allowed and the marginals of any
//! fixed size may coincide across a change. Estimation is driven entirely
//! by an empirical distributional distance between subsamples.
//!
//! * [`distance`]: empirical word frequencies and the distance built on them.
//! * [`estimators`]: the segment score, the single-changepoint estimator,
//!   the list estimator and the clustering-based changepoint estimator.
//! * [`generators`]: seeded test processes and piecewise composition.
//! * [`experiment`]: error metric, mean-change baseline and sweep harness.

#![forbid(unsafe_code)]

pub mod distance;
mod error;
pub mod estimators;
pub mod experiment;
pub mod generators;
mod series;

pub use distance::{empirical_distance, empirical_frequencies, quantize, DistanceParams, Mode};
pub use error::{ChestError, Result};
pub use estimators::{find_changepoints, list_estimator, CandidateList};
pub use series::Series;
