// SPDX-License-Identifier: MIT OR Apache-2.0

//! Straight-from-the-definition distance used to check the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Sum over `m = 1..=m_max` of `2^-m · Σ_B |ν_x(B) − ν_y(B)|`, enumerating
/// every one of the `k^m` patterns.
pub fn exhaustive_discrete(x: &[u32], y: &[u32], alphabet: u32, m_max: usize) -> f64 {
    let mut total = 0.0;
    for m in 1..=m_max {
        let mut term = 0.0;
        for code in 0..(alphabet as u64).pow(m as u32) {
            let mut pattern = vec![0u32; m];
            let mut c = code;
            for slot in pattern.iter_mut().rev() {
                *slot = (c % alphabet as u64) as u32;
                c /= alphabet as u64;
            }
            term += (frequency(x, &pattern) - frequency(y, &pattern)).abs();
        }
        total += 0.5f64.powi(m as i32) * term;
    }
    total
}

fn frequency(s: &[u32], pattern: &[u32]) -> f64 {
    if s.len() < pattern.len() {
        return 0.0;
    }
    let windows = s.len() - pattern.len() + 1;
    let hits = s.windows(pattern.len()).filter(|w| *w == pattern).count();
    hits as f64 / windows as f64
}

/// Real-valued distance: cells `floor((v − lo)/(hi − lo) · 2^l)` clamped into
/// range, words counted in a map of observed patterns.
pub fn real(x: &[f64], y: &[f64], m_max: usize, l_max: usize, range: Option<(f64, f64)>) -> f64 {
    let (lo, hi) = range.unwrap_or_else(|| {
        let lo = x.iter().chain(y).copied().fold(f64::INFINITY, f64::min);
        let hi = x.iter().chain(y).copied().fold(f64::NEG_INFINITY, f64::max);
        if lo < hi {
            (lo, hi)
        } else {
            (lo, lo + 1.0)
        }
    });
    let mut total = 0.0;
    for l in 1..=l_max {
        let cells = |s: &[f64]| -> Vec<u32> {
            let top = (1u32 << l) - 1;
            s.iter()
                .map(|v| {
                    let c = ((v - lo) / (hi - lo) * f64::from(1u32 << l)).floor();
                    c.clamp(0.0, f64::from(top)) as u32
                })
                .collect()
        };
        let (cx, cy) = (cells(x), cells(y));
        for m in 1..=m_max {
            let fx = observed(&cx, m);
            let fy = observed(&cy, m);
            let mut keys: Vec<&Vec<u32>> = fx.keys().chain(fy.keys()).collect();
            keys.sort();
            keys.dedup();
            let term: f64 = keys
                .into_iter()
                .map(|k| (fx.get(k).unwrap_or(&0.0) - fy.get(k).unwrap_or(&0.0)).abs())
                .sum();
            total += 0.5f64.powi(m as i32) * 0.5f64.powi(l as i32) * term;
        }
    }
    total
}

fn observed(s: &[u32], m: usize) -> BTreeMap<Vec<u32>, f64> {
    let mut counts = BTreeMap::new();
    if s.len() < m {
        return counts;
    }
    let windows = (s.len() - m + 1) as f64;
    for w in s.windows(m) {
        *counts.entry(w.to_vec()).or_insert(0.0) += 1.0 / windows;
    }
    counts
}

/// `max(1, floor(log2 n))` capped.
pub fn auto_schedule(n: usize, cap: usize) -> usize {
    let mut k = 0;
    while (2usize << k) <= n {
        k += 1;
    }
    k.clamp(1, cap)
}

pub fn as_f64(s: &[u32]) -> Vec<f64> {
    s.iter().map(|&v| f64::from(v)).collect()
}
