// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense identifiers for sliding-window words.
//!
//! Words of length `m` are interned level by level: the id of the word at
//! position `p` is the id of the pair (word of length `m - 1` at `p`, symbol
//! at `p + m - 1`). Each level is one hashing pass over the windows, so all
//! word lengths up to `m` cost `O(n * m)` in total and the pattern space is
//! never materialized.

use rustc_hash::FxHashMap;

pub(crate) struct WordIds<'a> {
    streams: Vec<&'a [u32]>,
    ids: Vec<Vec<u32>>,
    level: usize,
    distinct: usize,
    table: FxHashMap<u64, u32>,
}

impl<'a> WordIds<'a> {
    /// Ids are shared across all `streams`, so equal words in different
    /// streams get equal ids.
    pub fn new(streams: Vec<&'a [u32]>) -> Self {
        let ids = streams.iter().map(|s| vec![0; s.len()]).collect();
        Self {
            streams,
            ids,
            level: 0,
            distinct: 0,
            table: FxHashMap::default(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of distinct words at the current level.
    pub fn distinct(&self) -> usize {
        self.distinct
    }

    pub fn ids(&self, stream: usize) -> &[u32] {
        &self.ids[stream]
    }

    /// Total number of windows across streams at the current level.
    pub fn windows(&self) -> usize {
        self.ids.iter().map(Vec::len).sum()
    }

    /// True when no word occurs twice. Stays true at every longer length.
    pub fn all_unique(&self) -> bool {
        self.distinct == self.windows()
    }

    /// Extends every word by one symbol.
    pub fn advance(&mut self) {
        self.level += 1;
        self.table.clear();
        let m = self.level;
        let table = &mut self.table;
        for (ids, syms) in self.ids.iter_mut().zip(&self.streams) {
            let windows = (syms.len() + 1).saturating_sub(m);
            ids.truncate(windows);
            for (p, id) in ids.iter_mut().enumerate() {
                let key = (u64::from(*id) << 32) | u64::from(syms[p + m - 1]);
                let next = table.len() as u32;
                *id = *table.entry(key).or_insert(next);
            }
        }
        self.distinct = self.table.len();
    }
}

/// `Σ_B |c_x(B)·T_y − c_y(B)·T_x|` over all words at the current level of a
/// two-stream [`WordIds`]. The sum is an exact integer and symmetric in the
/// two streams.
pub(crate) fn pair_discrepancy(words: &WordIds<'_>, scratch: &mut Vec<[u32; 2]>) -> u128 {
    let (x, y) = (words.ids(0), words.ids(1));
    let (tx, ty) = (x.len() as u64, y.len() as u64);
    if words.all_unique() {
        return 2 * u128::from(tx) * u128::from(ty);
    }
    scratch.clear();
    scratch.resize(words.distinct(), [0, 0]);
    for &id in x {
        scratch[id as usize][0] += 1;
    }
    for &id in y {
        scratch[id as usize][1] += 1;
    }
    scratch
        .iter()
        .map(|&[cx, cy]| u128::from((u64::from(cx) * ty).abs_diff(u64::from(cy) * tx)))
        .sum()
}

/// Turns an exact discrepancy into `Σ_B |ν_x(B) − ν_y(B)|`.
///
/// An empty window set has all frequencies 0, so against a nonempty one the
/// sum is 1.
pub(crate) fn frequency_l1(discrepancy: u128, tx: usize, ty: usize) -> f64 {
    match (tx, ty) {
        (0, 0) => 0.0,
        (0, _) | (_, 0) => 1.0,
        _ => discrepancy as f64 / (tx as u128 * ty as u128) as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_identify_equal_words_across_streams() {
        let x = [0, 1, 0, 1];
        let y = [1, 0, 1, 1];
        let mut words = WordIds::new(vec![&x, &y]);
        words.advance();
        assert_eq!(words.distinct(), 2);
        words.advance();
        // x: 01 10 01, y: 10 01 11
        assert_eq!(words.ids(0), &[0, 1, 0]);
        assert_eq!(words.ids(1), &[1, 0, 2]);
        assert_eq!(words.distinct(), 3);
        words.advance();
        // x: 010 101, y: 101 011
        assert_eq!(words.ids(0), &[0, 1]);
        assert_eq!(words.ids(1), &[1, 2]);
    }

    #[test]
    fn short_streams_run_out_of_windows() {
        let x = [1];
        let y = [0, 0, 0];
        let mut words = WordIds::new(vec![&x, &y]);
        words.advance();
        words.advance();
        assert!(words.ids(0).is_empty());
        assert_eq!(words.ids(1).len(), 2);
        words.advance();
        words.advance();
        assert!(words.ids(1).is_empty());
        assert_eq!(words.windows(), 0);
    }

    #[test]
    fn discrepancy_matches_hand_count() {
        // m = 2 on x = 0101, y = 1111: x {01: 2, 10: 1}, y {11: 3}
        let x = [0, 1, 0, 1];
        let y = [1, 1, 1, 1];
        let mut words = WordIds::new(vec![&x, &y]);
        let mut scratch = Vec::new();
        words.advance();
        words.advance();
        let s = pair_discrepancy(&words, &mut scratch);
        // |2·3 − 0| + |1·3 − 0| + |0 − 3·3| = 18, over 3·3
        assert_eq!(s, 18);
        assert_eq!(frequency_l1(s, 3, 3), 2.0);
    }

    #[test]
    fn empty_sides() {
        assert_eq!(frequency_l1(0, 0, 0), 0.0);
        assert_eq!(frequency_l1(0, 0, 5), 1.0);
        assert_eq!(frequency_l1(0, 5, 0), 1.0);
    }
}
