//! Samples of a real function on a uniform time grid.

use crate::error::{Error, Result};

/// `values[k] ≈ v(t0 + k h)` for `k = 0..=N`.
///
/// `values[0]` is the initial trace `v(0+)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub t0: f64,
    pub h: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(t0: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        check_step(h)?;
        if values.len() < 2 {
            return Err(Error::GridTooShort {
                needed: 2,
                got: values.len(),
            });
        }
        Ok(GridFunction { t0, h, values })
    }

    /// Samples `f` at `0, h, ..., n h`.
    pub fn sample(h: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_step(h)?;
        let values = (0..=n).map(|k| f(k as f64 * h)).collect();
        GridFunction::new(0.0, h, values)
    }

    /// Number of steps covering `[0, t_end]`, rounding to the nearest
    /// integer so that `t_end = n h` is hit exactly for dyadic steps.
    pub fn steps_for(h: f64, t_end: f64) -> Result<usize> {
        check_step(h)?;
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::OutOfRange {
                name: "t_end",
                value: t_end,
                range: "(0, inf)",
            });
        }
        Ok(((t_end / h).round() as usize).max(1))
    }

    pub fn constant(h: f64, n: usize, c: f64) -> Result<Self> {
        GridFunction::new(0.0, h, vec![c; n + 1])
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        GridFunction {
            t0: self.t0,
            h: self.h,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the last node, N.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn t_end(&self) -> f64 {
        self.t(self.last_index())
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |k| self.t(k))
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.last_index()]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max_k |self_k - other_k|`; the grids must have the same length.
    pub fn max_diff(&self, other: &GridFunction) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Max-norm distance to `f` sampled on this grid.
    pub fn max_error(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.times()
            .zip(&self.values)
            .fold(0.0, |m, (t, v)| m.max((v - f(t)).abs()))
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = self
            .times()
            .zip(&self.values)
            .map(|(t, &v)| f(t, v))
            .collect();
        self.with_values(values)
    }

    /// Keeps nodes `0..=n`.
    pub fn truncated(&self, n: usize) -> Self {
        GridFunction {
            t0: self.t0,
            h: self.h,
            values: self.values[..=n.min(self.last_index())].to_vec(),
        }
    }

    /// Every `stride`-th node, starting at 0.
    pub fn subsample(&self, stride: usize) -> Self {
        let stride = stride.max(1);
        GridFunction {
            t0: self.t0,
            h: self.h * stride as f64,
            values: self.values.iter().step_by(stride).copied().collect(),
        }
    }

    pub(crate) fn same_shape(&self, other: &GridFunction) -> Result<()> {
        if self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch(self.values.len(), other.values.len()));
        }
        Ok(())
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::BadStep(h))
    }
}
