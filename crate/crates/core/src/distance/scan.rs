// SPDX-License-Identifier: MIT OR Apache-2.0

use super::words::{frequency_l1, WordIds};
use super::{symbolize, DistanceParams};
use crate::error::{ChestError, Result};

/// Distances between the two sides of a window at many split points.
///
/// `scores(&[t, ...])` returns, for each `t`, exactly the value of
/// `empirical_distance(&window[..t], &window[t..], params)`, bit for bit.
/// Words are interned once per (word length, depth) over the whole window
/// and per-side counts are updated incrementally between consecutive
/// splits, so a scan over `k` splits costs one pass over the window plus
/// `O(k · q)` for `q` repeated words, instead of `k` full distance
/// evaluations.
pub struct SplitScanner<'a> {
    window: &'a [f64],
    params: &'a DistanceParams,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Straddle,
    Right,
}

impl<'a> SplitScanner<'a> {
    pub fn new(window: &'a [f64], params: &'a DistanceParams) -> Result<Self> {
        if window.len() < 2 {
            return Err(ChestError::param(format!(
                "split scan needs at least 2 values, got {}",
                window.len()
            )));
        }
        Ok(Self { window, params })
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    /// `splits` must be strictly increasing and inside `1..len`.
    pub fn scores(&self, splits: &[usize]) -> Result<Vec<f64>> {
        let n = self.window.len();
        if splits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ChestError::param(
                "split points must be strictly increasing",
            ));
        }
        if let Some(&t) = splits.iter().find(|&&t| t == 0 || t >= n) {
            return Err(ChestError::param(format!(
                "split point {t} leaves an empty side in a window of length {n}"
            )));
        }
        let mut scores = vec![0.0; splits.len()];
        if splits.is_empty() {
            return Ok(scores);
        }
        let plan = self.params.plan(n)?;
        let symbols = symbolize(&[self.window], self.params, plan.max_depth())?;
        let mut level = LevelScan::default();
        for (l, &depth_weight) in plan.depth_weights.iter().enumerate() {
            let streams = symbols.at_depth(l + 1);
            let mut words = WordIds::new(vec![&streams[0]]);
            for (m, &word_weight) in plan.word_weights.iter().enumerate() {
                let m = m + 1;
                let weight = word_weight * depth_weight;
                if words.level() > 0 && words.all_unique() {
                    for (score, &t) in scores.iter_mut().zip(splits) {
                        let (tl, tr) = side_windows(n, t, m);
                        let discrepancy = 2 * tl as u128 * tr as u128;
                        *score += weight * frequency_l1(discrepancy, tl, tr);
                    }
                } else {
                    words.advance();
                    level.run(words.ids(0), words.distinct(), n, m, splits, |i, l1| {
                        scores[i] += weight * l1;
                    });
                }
            }
        }
        Ok(scores)
    }
}

/// Window counts on each side of split `t` for words of length `m`.
fn side_windows(n: usize, t: usize, m: usize) -> (usize, usize) {
    ((t + 1).saturating_sub(m), (n - t + 1).saturating_sub(m))
}

/// Reusable buffers for scanning one (word length, depth) level.
#[derive(Default)]
struct LevelScan {
    totals: Vec<u32>,
    compact: Vec<u32>,
    single_prefix: Vec<u32>,
    counts: Vec<[u32; 2]>,
}

const SINGLETON: u32 = u32::MAX;

impl LevelScan {
    fn run(
        &mut self,
        ids: &[u32],
        distinct: usize,
        n: usize,
        m: usize,
        splits: &[usize],
        mut emit: impl FnMut(usize, f64),
    ) {
        let windows = ids.len();
        self.totals.clear();
        self.totals.resize(distinct, 0);
        for &id in ids {
            self.totals[id as usize] += 1;
        }
        // Words seen once contribute T_other per occurrence and are handled
        // through prefix counts; only repeated words are tracked per side.
        self.compact.clear();
        let mut repeated = 0u32;
        for &total in &self.totals {
            if total > 1 {
                self.compact.push(repeated);
                repeated += 1;
            } else {
                self.compact.push(SINGLETON);
            }
        }
        self.single_prefix.clear();
        self.single_prefix.push(0);
        let mut acc = 0;
        for &id in ids {
            acc += u32::from(self.compact[id as usize] == SINGLETON);
            self.single_prefix.push(acc);
        }
        self.counts.clear();
        self.counts.resize(repeated as usize, [0, 0]);

        let side = |p: usize, t: usize| {
            if p + m <= t {
                Side::Left
            } else if p >= t {
                Side::Right
            } else {
                Side::Straddle
            }
        };
        let mut current = splits[0];
        for (p, &id) in ids.iter().enumerate() {
            self.shift(id, Side::Straddle, side(p, current));
        }
        for (i, &t) in splits.iter().enumerate() {
            let first = (current + 1).saturating_sub(m);
            for (p, &id) in ids.iter().enumerate().take(t.min(windows)).skip(first) {
                self.shift(id, side(p, current), side(p, t));
            }
            current = t;

            let (tl, tr) = side_windows(n, t, m);
            let single_left = u128::from(self.single_prefix[tl]);
            let single_right = if tr > 0 {
                u128::from(self.single_prefix[windows] - self.single_prefix[t])
            } else {
                0
            };
            let (tl64, tr64) = (tl as u64, tr as u64);
            let repeated_sum: u128 = self
                .counts
                .iter()
                .map(|&[cl, cr]| u128::from((u64::from(cl) * tr64).abs_diff(u64::from(cr) * tl64)))
                .sum();
            let discrepancy = single_left * tr as u128 + single_right * tl as u128 + repeated_sum;
            emit(i, frequency_l1(discrepancy, tl, tr));
        }
    }

    fn shift(&mut self, id: u32, from: Side, to: Side) {
        let q = self.compact[id as usize];
        if q == SINGLETON || from == to {
            return;
        }
        let slot = &mut self.counts[q as usize];
        match from {
            Side::Left => slot[0] -= 1,
            Side::Right => slot[1] -= 1,
            Side::Straddle => {}
        }
        match to {
            Side::Left => slot[0] += 1,
            Side::Right => slot[1] += 1,
            Side::Straddle => {}
        }
    }
}
