use crate::error::{Error, Result};
use crate::real::Real;

/// Strictly increasing list of phases (radians) within [-pi, pi].
#[derive(Clone, Debug)]
pub struct PhaseGrid<T: Real> {
    values: Vec<T>,
}

impl<T: Real> PhaseGrid<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidGrid);
        }
        let bound = T::PI() * (T::one() + T::epsilon() * T::of(8.0));
        for &v in &values {
            if !v.is_finite() || v.abs() > bound {
                return Err(Error::InvalidGrid);
            }
        }
        for w in values.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidGrid);
            }
        }
        Ok(PhaseGrid { values })
    }

    /// n evenly spaced points including both endpoints.
    pub fn uniform(lo: T, hi: T, n: usize) -> Result<Self> {
        if n < 2 || !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidGrid);
        }
        let step = (hi - lo) / T::of((n - 1) as f64);
        let values = (0..n)
            .map(|k| {
                if k == n - 1 {
                    hi
                } else {
                    lo + step * T::of(k as f64)
                }
            })
            .collect();
        PhaseGrid::new(values)
    }

    /// n cell midpoints of (lo, hi); never touches the endpoints, which is
    /// what fringe scans over the open interval (0, pi) need.
    pub fn open_uniform(lo: T, hi: T, n: usize) -> Result<Self> {
        if n < 1 || !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidGrid);
        }
        let step = (hi - lo) / T::of(n as f64);
        let half = T::of(0.5);
        let values = (0..n)
            .map(|k| lo + step * (T::of(k as f64) + half))
            .collect();
        PhaseGrid::new(values)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
