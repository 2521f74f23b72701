// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{ChestError, Result};

/// Normalized estimation error of a changepoint estimate.
///
/// If the estimate has a different number of changepoints than the truth
/// the error is 1. Otherwise both lists are paired in increasing order and
/// the error is the mean absolute offset divided by `n`, capped at 1.
pub fn estimation_error(true_taus: &[usize], est_taus: &[usize], n: usize) -> Result<f64> {
    if n == 0 {
        return Err(ChestError::param("sample length must be at least 1"));
    }
    if true_taus.is_empty() {
        return Err(ChestError::param("true changepoint list is empty"));
    }
    for (name, taus) in [("true", true_taus), ("estimated", est_taus)] {
        if taus.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ChestError::param(format!(
                "{name} changepoints must be strictly increasing"
            )));
        }
    }
    if true_taus.len() != est_taus.len() {
        return Ok(1.0);
    }
    let offset: usize = true_taus
        .iter()
        .zip(est_taus)
        .map(|(t, e)| t.abs_diff(*e))
        .sum();
    Ok((offset as f64 / true_taus.len() as f64 / n as f64).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(estimation_error(&[100], &[100], 1000).unwrap(), 0.0);
        assert_eq!(estimation_error(&[100], &[110], 1000).unwrap(), 0.01);
        assert_eq!(estimation_error(&[100, 200], &[150], 1000).unwrap(), 1.0);
        assert_eq!(estimation_error(&[100], &[], 1000).unwrap(), 1.0);
        assert_eq!(
            estimation_error(&[100, 500], &[110, 530], 1000).unwrap(),
            0.02
        );
    }

    #[test]
    fn capped_at_one() {
        assert_eq!(estimation_error(&[1], &[5000], 10).unwrap(), 1.0);
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(estimation_error(&[200, 100], &[1, 2], 1000).is_err());
        assert!(estimation_error(&[100, 100], &[1, 2], 1000).is_err());
        assert!(estimation_error(&[100, 200], &[2, 1], 1000).is_err());
        assert!(estimation_error(&[], &[], 1000).is_err());
        assert!(estimation_error(&[1], &[1], 0).is_err());
    }
}
