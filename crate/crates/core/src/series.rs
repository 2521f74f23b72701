// SPDX-License-Identifier: MIT OR Apache-2.0

use std::ops::{Deref, Range};

use serde::{Deserialize, Serialize};

use crate::error::{ChestError, Result};

/// An observed sample: a nonempty sequence of finite scalars.
///
/// Binary data is encoded as `0.0` / `1.0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Series(Vec<f64>);

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(ChestError::input("series must contain at least one value"));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(ChestError::input(format!(
                "series value at index {pos} is not finite ({})",
                values[pos]
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Copies out `self[range]` as a new series.
    pub fn slice(&self, range: Range<usize>) -> Result<Self> {
        if range.start >= range.end || range.end > self.0.len() {
            return Err(ChestError::param(format!(
                "slice {}..{} is empty or out of bounds for length {}",
                range.start,
                range.end,
                self.0.len()
            )));
        }
        Ok(Self(self.0[range].to_vec()))
    }
}

impl Deref for Series {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Series {
    type Error = ChestError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Series> for Vec<f64> {
    fn from(series: Series) -> Self {
        series.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(Series::new(vec![]).is_err());
        assert!(Series::new(vec![0.0, f64::NAN]).is_err());
        assert!(Series::new(vec![f64::INFINITY]).is_err());
        assert_eq!(Series::new(vec![1.0, 2.0]).unwrap().len(), 2);
    }

    #[test]
    fn deserialization_validates() {
        assert!(serde_json::from_str::<Series>("[]").is_err());
        let s: Series = serde_json::from_str("[0, 1, 0.5]").unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 0.5]);
    }
}
