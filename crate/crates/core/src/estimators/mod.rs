// SPDX-License-Identifier: MIT OR Apache-2.0

//! Changepoint estimators built on the empirical distributional distance.
//!
//! Indices are 0-based; a changepoint `τ` is the length of the prefix
//! before the change, so the first segment is `x[..τ]`.
//!
//! Grid scoring and the per-segment Φ scans run on the rayon pool; results
//! do not depend on the number of worker threads.

mod changepoints;
mod cluster;
mod list;
mod score;

pub use changepoints::{find_changepoints, find_changepoints_with_scan};
pub use cluster::{cluster_segments, ClusterAssignment, Segmentation};
pub use list::{list_estimator, list_estimator_with_scan, Candidate, CandidateList};
pub use score::{delta, phi, phi_with_scan, PhiScan};
