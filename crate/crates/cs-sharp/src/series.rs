//! Finite real vectors.
//!
//! A [`Series`] doubles as a sample of observations and as a point of R^n.
//! Construction rejects NaN and infinities, so downstream arithmetic never
//! has to re-check.

use crate::error::{Error, Result};
use crate::sum;

/// A nonempty, finite real vector of fixed length.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
}

impl Series {
    /// Builds a series, rejecting empty input and non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        Ok(Series { values })
    }

    /// Convenience constructor from a slice.
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    /// Pairwise-accumulated sample mean.
    pub fn mean(&self) -> f64 {
        sum::mean(&self.values)
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        sum::norm(&self.values)
    }

    /// The series with its sample mean subtracted from every entry.
    pub fn centered(&self) -> Series {
        let m = self.mean();
        Series {
            values: self.values.iter().map(|v| v - m).collect(),
        }
    }

    /// First `k` entries as a new series. `k` must be in `1..=len`.
    pub fn prefix(&self, k: usize) -> Result<Series> {
        if k == 0 || k > self.len() {
            return Err(Error::SplitOutOfRange {
                split: k,
                max: self.len(),
            });
        }
        Ok(Series {
            values: self.values[..k].to_vec(),
        })
    }

    pub(crate) fn from_raw(values: Vec<f64>) -> Series {
        debug_assert!(!values.is_empty() && values.iter().all(|v| v.is_finite()));
        Series { values }
    }
}

impl std::ops::Index<usize> for Series {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Errors unless `x` and `y` have the same length.
pub(crate) fn check_same_len(x: &Series, y: &Series) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(Series::new(vec![]), Err(Error::EmptySample)));
        assert!(matches!(
            Series::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        ));
        assert!(matches!(
            Series::new(vec![f64::INFINITY]),
            Err(Error::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn centering_zeroes_the_mean() {
        let s = Series::new(vec![1.0, 2.0, 3.0, 6.0]).unwrap();
        let c = s.centered();
        assert_eq!(c.mean(), 0.0);
        assert_eq!(c.as_slice(), &[-2.0, -1.0, 0.0, 3.0]);
    }

    #[test]
    fn prefix_bounds_are_enforced() {
        let s = Series::new(vec![1.0, 2.0]).unwrap();
        assert!(s.prefix(0).is_err());
        assert!(s.prefix(3).is_err());
        assert_eq!(s.prefix(1).unwrap().as_slice(), &[1.0]);
    }
}
