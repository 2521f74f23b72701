// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::{discrete_symbols, observed_range, quantize, DistanceParams, Mode};
use crate::error::{ChestError, Result};

/// Sliding-window word counts of one sample at one word length and depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyTable {
    pub word_len: usize,
    /// Quantization depth; 0 in discrete mode.
    pub quant_depth: usize,
    pub counts: BTreeMap<Vec<u32>, u64>,
    /// `n - m + 1`, or 0 when the sample is shorter than the word.
    pub window_total: usize,
}

impl FrequencyTable {
    pub fn frequency(&self, word: &[u32]) -> f64 {
        match self.counts.get(word) {
            Some(&c) if self.window_total > 0 => c as f64 / self.window_total as f64,
            _ => 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("frequency table serializes")
    }
}

struct Counts<'a>(&'a BTreeMap<Vec<u32>, u64>);

impl Serialize for Counts<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (word, count) in self.0 {
            let key = word
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            map.serialize_entry(&key, count)?;
        }
        map.end()
    }
}

impl Serialize for FrequencyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FrequencyTable", 4)?;
        s.serialize_field("word_len", &self.word_len)?;
        s.serialize_field("quant_depth", &self.quant_depth)?;
        s.serialize_field("window_total", &self.window_total)?;
        s.serialize_field("counts", &Counts(&self.counts))?;
        s.end()
    }
}

/// Counts every length-`word_len` window of `x` after quantization at
/// `quant_depth` (ignored in discrete mode).
///
/// In real mode the range is `params.value_range` or the min/max of `x`.
pub fn empirical_frequencies(
    x: &[f64],
    word_len: usize,
    quant_depth: usize,
    params: &DistanceParams,
) -> Result<FrequencyTable> {
    if word_len == 0 {
        return Err(ChestError::param("word length must be at least 1"));
    }
    params.validate()?;
    let (symbols, quant_depth) = match params.mode {
        Mode::Discrete { alphabet } => (discrete_symbols(x, alphabet)?, 0),
        Mode::Real => {
            let range = params.value_range.unwrap_or_else(|| observed_range(&[x]));
            (quantize(x, quant_depth, range)?, quant_depth)
        }
    };
    let mut counts = BTreeMap::new();
    for window in symbols.windows(word_len) {
        *counts.entry(window.to_vec()).or_insert(0) += 1;
    }
    Ok(FrequencyTable {
        word_len,
        quant_depth,
        counts,
        window_total: (x.len() + 1).saturating_sub(word_len),
    })
}
