//! Uniform 1-D grids and finite-difference stencils.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform grid `t_i = t0 + i h`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t0: f64,
    pub h: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(t0: f64, t1: f64, h: f64) -> Result<Self> {
        if !(t1 > t0) || !(h > 0.0) || !t0.is_finite() || !t1.is_finite() {
            return Err(Error::grid(format!("bad grid spec [{t0}, {t1}] step {h}")));
        }
        let n = ((t1 - t0) / h).round() as usize + 1;
        if n < 8 {
            return Err(Error::grid("grid too small"));
        }
        Ok(Grid { t0, h, n })
    }

    /// Grid with the given number of points (`n >= 2`), step derived.
    pub fn with_points(t0: f64, t1: f64, n: usize) -> Result<Self> {
        if n < 2 || !(t1 > t0) {
            return Err(Error::grid("bad grid spec"));
        }
        Ok(Grid {
            t0,
            h: (t1 - t0) / (n - 1) as f64,
            n,
        })
    }

    #[inline]
    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.h
    }

    pub fn t_end(&self) -> f64 {
        self.t(self.n - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.t(i))
    }

    pub fn sample<F: FnMut(f64) -> f64>(&self, mut f: F) -> Vec<f64> {
        (0..self.n).map(|i| f(self.t(i))).collect()
    }

    /// Largest i with t(i) <= t (clamped to the grid).
    pub fn floor_index(&self, t: f64) -> usize {
        let i = ((t - self.t0) / self.h).floor();
        (i.max(0.0) as usize).min(self.n - 1)
    }
}

/// First derivative of uniform samples, 4th order in the interior,
/// one-sided 4th order stencils at the four boundary points.
pub fn deriv1_4th(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 6, "need at least 6 samples for the 4th order stencil");
    let mut out = vec![0.0; n];
    let c = 1.0 / (12.0 * h);
    for i in 2..n - 2 {
        out[i] = c * (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]);
    }
    let f = |i: usize| values[i];
    for i in 0..2 {
        out[i] = (-25.0 * f(i) + 48.0 * f(i + 1) - 36.0 * f(i + 2) + 16.0 * f(i + 3)
            - 3.0 * f(i + 4))
            / (12.0 * h);
    }
    for i in n - 2..n {
        out[i] = (25.0 * f(i) - 48.0 * f(i - 1) + 36.0 * f(i - 2) - 16.0 * f(i - 3)
            + 3.0 * f(i - 4))
            / (12.0 * h);
    }
    out
}

/// Second derivative of uniform samples, 4th order, interior only; the two
/// cells nearest each boundary fall back to the 2nd order stencil.
pub fn deriv2_4th(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 6);
    let mut out = vec![0.0; n];
    let c = 1.0 / (12.0 * h * h);
    for i in 2..n - 2 {
        out[i] = c
            * (-values[i - 2] + 16.0 * values[i - 1] - 30.0 * values[i] + 16.0 * values[i + 1]
                - values[i + 2]);
    }
    let c2 = 1.0 / (h * h);
    for i in [1, n - 2] {
        out[i] = c2 * (values[i - 1] - 2.0 * values[i] + values[i + 1]);
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    out
}

/// Index of the largest value.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Index of the smallest value.
pub fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}
