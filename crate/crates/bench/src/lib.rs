// SPDX-License-Identifier: MIT OR Apache-2.0

//! Shared fixtures for the criterion benchmarks.

use chest_core::generators::{
    gen_bernoulli, gen_piecewise, PiecewiseSpec, ProcessSpec, SegmentSpec, BETA_1, BETA_2,
};
use chest_core::Series;

/// Bernoulli(0.2) followed by Bernoulli(0.7), `n` values per side.
pub fn bernoulli_pair(n: usize, seed: u64) -> (Series, Series) {
    let a = gen_bernoulli(0.2, n, seed).expect("valid process");
    let b = gen_bernoulli(0.7, n, seed.wrapping_add(1)).expect("valid process");
    (a, b)
}

/// Two-change hidden-rotation sample of length `n` with changes at 0.3n and 0.6n.
pub fn hidden_rotation_sample(n: usize, seed: u64) -> Series {
    let cut1 = 3 * n / 10;
    let cut2 = 6 * n / 10;
    let spec = PiecewiseSpec {
        segments: vec![
            SegmentSpec {
                len: cut1,
                process: "h1".into(),
            },
            SegmentSpec {
                len: cut2 - cut1,
                process: "h2".into(),
            },
            SegmentSpec {
                len: n - cut2,
                process: "h1".into(),
            },
        ],
        processes: [
            ("h1".to_string(), ProcessSpec::hidden_rotation(BETA_1)),
            ("h2".to_string(), ProcessSpec::hidden_rotation(BETA_2)),
        ]
        .into_iter()
        .collect(),
    };
    gen_piecewise(&spec, seed).expect("valid spec").0
}
