use crate::error::{invalid, Result};

/// Uniformly sampled scalar signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    ts: f64,
}

impl TimeSeries {
    /// Builds a series, rejecting empty input, non-finite samples and a
    /// non-positive sampling period.
    pub fn new(values: Vec<f64>, ts: f64) -> Result<Self> {
        if !(ts > 0.0 && ts.is_finite()) {
            return Err(invalid(format!("sampling period must be positive, got {ts}")));
        }
        if values.is_empty() {
            return Err(invalid("time series must contain at least one sample"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite sample at index {i}")));
        }
        Ok(Self { values, ts })
    }

    /// Internal constructor for values already known to be valid.
    pub(crate) fn from_parts(values: Vec<f64>, ts: f64) -> Self {
        debug_assert!(ts > 0.0 && !values.is_empty());
        Self { values, ts }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ts(&self) -> f64 {
        self.ts
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Splits into `[0, at)` and `[at, len)`. Both halves must be non-empty.
    pub fn split_at(&self, at: usize) -> Result<(TimeSeries, TimeSeries)> {
        if at == 0 || at >= self.values.len() {
            return Err(invalid(format!("split index {at} outside 1..{}", self.values.len())));
        }
        let (a, b) = self.values.split_at(at);
        Ok((
            Self::from_parts(a.to_vec(), self.ts),
            Self::from_parts(b.to_vec(), self.ts),
        ))
    }
}

/// Arithmetic mean.
pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Population standard deviation.
pub(crate) fn std_dev(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / x.len() as f64).sqrt()
}
