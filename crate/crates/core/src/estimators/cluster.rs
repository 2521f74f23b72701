// SPDX-License-Identifier: MIT OR Apache-2.0

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{empirical_distance, DistanceParams};
use crate::error::{ChestError, Result};

/// Consecutive non-overlapping segments `boundaries[i]..boundaries[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmentation {
    boundaries: Vec<usize>,
}

impl Segmentation {
    /// `boundaries` must start at 0 and increase strictly.
    pub fn new(boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.len() < 2 || boundaries[0] != 0 {
            return Err(ChestError::param(
                "segmentation needs boundaries 0 = b_0 < ... < b_k = n with k >= 1",
            ));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ChestError::param(
                "segment boundaries must increase strictly",
            ));
        }
        Ok(Self { boundaries })
    }

    /// Splits `0..n` at the given strictly increasing interior points.
    pub fn from_changepoints(n: usize, changepoints: &[usize]) -> Result<Self> {
        let mut boundaries = Vec::with_capacity(changepoints.len() + 2);
        boundaries.push(0);
        boundaries.extend_from_slice(changepoints);
        boundaries.push(n);
        Self::new(boundaries)
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn segment(&self, i: usize) -> Range<usize> {
        self.boundaries[i]..self.boundaries[i + 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.boundaries.windows(2).map(|w| w[0]..w[1])
    }
}

/// Cluster of every segment plus the segment chosen as each cluster's center.
///
/// Cluster ids are 0-based: cluster `k` is centered on `centers[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub labels: Vec<usize>,
    pub centers: Vec<usize>,
}

/// Farthest-point clustering of the segments into `clusters` groups.
///
/// The first segment is the first center; each further center is the
/// segment with the largest distance to its nearest existing center
/// (leftmost on ties). Remaining segments join the nearest center, with
/// ties going to the lower cluster id.
pub fn cluster_segments(
    x: &[f64],
    segmentation: &Segmentation,
    clusters: usize,
    params: &DistanceParams,
) -> Result<ClusterAssignment> {
    let count = segmentation.len();
    if clusters == 0 || clusters > count {
        return Err(ChestError::param(format!(
            "cannot form {clusters} clusters from {count} segments"
        )));
    }
    if segmentation.boundaries().last() != Some(&x.len()) {
        return Err(ChestError::param(format!(
            "segmentation ends at {:?}, sample has length {}",
            segmentation.boundaries().last(),
            x.len()
        )));
    }
    params.validate()?;
    let segments: Vec<&[f64]> = segmentation.segments().map(|r| &x[r]).collect();
    let distances_to = |center: usize| -> Result<Vec<f64>> {
        segments
            .par_iter()
            .enumerate()
            .map(|(i, s)| {
                if i == center {
                    Ok(0.0)
                } else {
                    empirical_distance(s, segments[center], params)
                }
            })
            .collect()
    };

    let mut centers = vec![0];
    // center_distances[k][i]: distance from segment i to center k.
    let mut center_distances = vec![distances_to(0)?];
    let mut nearest = center_distances[0].clone();
    while centers.len() < clusters {
        let mut next: Option<usize> = None;
        for i in (0..count).filter(|i| !centers.contains(i)) {
            if next.is_none_or(|b| nearest[i] > nearest[b]) {
                next = Some(i);
            }
        }
        let next = next.expect("clusters <= segments leaves a candidate");
        let row = distances_to(next)?;
        for (d, &r) in nearest.iter_mut().zip(&row) {
            *d = d.min(r);
        }
        centers.push(next);
        center_distances.push(row);
    }

    let labels = (0..count)
        .map(|i| {
            if let Some(k) = centers.iter().position(|&c| c == i) {
                return k;
            }
            let mut best = 0;
            for k in 1..centers.len() {
                if center_distances[k][i] < center_distances[best][i] {
                    best = k;
                }
            }
            best
        })
        .collect();
    Ok(ClusterAssignment { labels, centers })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmentation_validation() {
        assert!(Segmentation::new(vec![0]).is_err());
        assert!(Segmentation::new(vec![1, 5]).is_err());
        assert!(Segmentation::new(vec![0, 3, 3, 5]).is_err());
        let s = Segmentation::from_changepoints(10, &[3, 7]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.segment(1), 3..7);
        assert!(Segmentation::from_changepoints(10, &[0]).is_err());
        assert!(Segmentation::from_changepoints(10, &[10]).is_err());
    }

    #[test]
    fn identical_segments_form_one_cluster() {
        let x = vec![0.0; 300];
        let seg = Segmentation::from_changepoints(300, &[100, 200]).unwrap();
        let a = cluster_segments(&x, &seg, 1, &DistanceParams::discrete(2)).unwrap();
        assert_eq!(a.labels, vec![0, 0, 0]);
        assert_eq!(a.centers, vec![0]);
    }

    #[test]
    fn zero_one_zero_blocks() {
        let x: Vec<f64> = (0..1500)
            .map(|i| f64::from(u8::from((500..1000).contains(&i))))
            .collect();
        let seg = Segmentation::from_changepoints(1500, &[500, 1000]).unwrap();
        let a = cluster_segments(&x, &seg, 2, &DistanceParams::discrete(2)).unwrap();
        assert_eq!(a.labels, vec![0, 1, 0]);
        assert_eq!(a.centers, vec![0, 1]);
    }

    #[test]
    fn every_segment_can_be_a_center() {
        let x: Vec<f64> = (0..90).map(|i| ((i / 30) % 2) as f64).collect();
        let seg = Segmentation::from_changepoints(90, &[30, 60]).unwrap();
        let a = cluster_segments(&x, &seg, 3, &DistanceParams::discrete(2)).unwrap();
        // Segments 0 and 2 are at distance 0, so 2 is picked last.
        assert_eq!(a.centers, vec![0, 1, 2]);
        assert_eq!(a.labels, vec![0, 1, 2]);
    }

    #[test]
    fn too_many_clusters_is_an_error() {
        let x = vec![0.0; 20];
        let seg = Segmentation::from_changepoints(20, &[10]).unwrap();
        assert!(cluster_segments(&x, &seg, 3, &DistanceParams::discrete(2)).is_err());
        assert!(cluster_segments(&x, &seg, 0, &DistanceParams::discrete(2)).is_err());
        assert!(cluster_segments(&x[..15], &seg, 1, &DistanceParams::discrete(2)).is_err());
    }
}
