//! Tridiagonal solvers and a generalized symmetric tridiagonal eigensolver.
//!
//! The eigenproblems are pencils `A x = mu B x` with `A` symmetric
//! tridiagonal and `B` diagonal positive. `B` carries the Emden-Fowler
//! weight `e^{2t}` whose dynamic range makes a reduction to standard form
//! hopeless, so eigenvalues come from Sturm-count bisection on `A - sigma B`
//! (never inverting `B`) and eigenvectors from inverse iteration.

use crate::error::{Error, Result};

/// Solve a general tridiagonal system with partial pivoting.
///
/// `sub[i]` couples row `i+1` to column `i`, `sup[i]` row `i` to column
/// `i+1`. Pivoting introduces one extra superdiagonal of fill-in.
pub fn solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    assert_eq!(sub.len(), n - 1);
    assert_eq!(sup.len(), n - 1);
    assert_eq!(rhs.len(), n);

    let mut a: Vec<f64> = sub.to_vec(); // A[i+1][i]
    let mut b: Vec<f64> = diag.to_vec(); // A[i][i]
    let mut c: Vec<f64> = sup.to_vec(); // A[i][i+1]
    c.push(0.0);
    let mut d = vec![0.0; n]; // fill-in A[i][i+2]
    let mut x: Vec<f64> = rhs.to_vec();

    for i in 0..n - 1 {
        if a[i].abs() > b[i].abs() {
            // Swap rows i and i+1.
            std::mem::swap(&mut b[i], &mut a[i]);
            let old_ci = c[i];
            c[i] = b[i + 1];
            b[i + 1] = old_ci;
            let old_di = d[i];
            d[i] = c[i + 1];
            c[i + 1] = old_di;
            x.swap(i, i + 1);
        }
        if b[i] == 0.0 {
            return Err(Error::Linear("singular tridiagonal matrix".into()));
        }
        let m = a[i] / b[i];
        b[i + 1] -= m * c[i];
        c[i + 1] -= m * d[i];
        x[i + 1] -= m * x[i];
    }
    if b[n - 1] == 0.0 {
        return Err(Error::Linear("singular tridiagonal matrix".into()));
    }
    x[n - 1] /= b[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i];
    }
    Ok(x)
}

/// Symmetric tridiagonal matrix (main diagonal plus one off-diagonal).
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// y = A x
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.off[i] * x[i + 1];
            }
            y[i] = v;
        }
        y
    }
}

/// Generalized pencil `A x = mu B x`, `B` diagonal with positive entries.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub a: SymTridiag,
    pub b: Vec<f64>,
}

impl Pencil {
    pub fn new(a: SymTridiag, b: Vec<f64>) -> Result<Self> {
        if b.len() != a.n() {
            return Err(Error::Eigen("weight length mismatch".into()));
        }
        if b.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Eigen("weight matrix not positive".into()));
        }
        Ok(Pencil { a, b })
    }

    /// Standard problem `A x = mu x`.
    pub fn standard(a: SymTridiag) -> Self {
        let n = a.n();
        Pencil { a, b: vec![1.0; n] }
    }

    fn pivmin(&self) -> f64 {
        let max_off = self
            .a
            .off
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()))
            .max(1.0);
        f64::MIN_POSITIVE.max(1e-300) * max_off * max_off
    }

    /// Number of pencil eigenvalues strictly below `sigma` (Sturm count via
    /// the LDL^T inertia of `A - sigma B`).
    pub fn count_below(&self, sigma: f64) -> usize {
        let n = self.a.n();
        let pivmin = self.pivmin();
        let mut count = 0usize;
        let mut d = self.a.diag[0] - sigma * self.b[0];
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let e = self.a.off[i - 1];
            let mut di = (self.a.diag[i] - sigma * self.b[i]) - e * e / d;
            if di.abs() < pivmin {
                di = -pivmin;
            }
            if di < 0.0 {
                count += 1;
            }
            d = di;
        }
        count
    }

    /// All eigenvalues in the open window `(lo, hi)`, ascending, each located
    /// to absolute tolerance `tol` by bisection.
    pub fn eigenvalues_in(&self, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
        assert!(hi > lo);
        let c_lo = self.count_below(lo);
        let c_hi = self.count_below(hi);
        let mut out = Vec::with_capacity(c_hi.saturating_sub(c_lo));
        for j in c_lo..c_hi {
            let mut a = lo;
            let mut b = hi;
            while b - a > tol + f64::EPSILON * (a.abs() + b.abs()) {
                let mid = 0.5 * (a + b);
                if self.count_below(mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            out.push(0.5 * (a + b));
        }
        out
    }

    /// The `m` eigenvalues closest to `target`, searched in an expanding
    /// window, ascending order.
    pub fn eigenvalues_near(&self, target: f64, m: usize, tol: f64) -> Vec<f64> {
        let mut half = 1.0;
        for _ in 0..60 {
            let found = self.eigenvalues_in(target - half, target + half, tol);
            if found.len() >= m {
                let mut v = found;
                v.sort_by(|x, y| {
                    (x - target)
                        .abs()
                        .partial_cmp(&(y - target).abs())
                        .unwrap()
                });
                v.truncate(m);
                v.sort_by(|x, y| x.partial_cmp(y).unwrap());
                return v;
            }
            half *= 4.0;
        }
        Vec::new()
    }

    /// Eigenvector for a converged eigenvalue `mu` by inverse iteration,
    /// normalized so that `x^T B x = 1`.
    pub fn eigenvector(&self, mu: f64) -> Result<Vec<f64>> {
        let n = self.a.n();
        // Small relative shift keeps the factorization well defined if mu is
        // accurate to round-off.
        let scale = self
            .a
            .diag
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()))
            .max(1.0);
        let shift = mu + 1e-13 * scale.min(1e12);
        let diag: Vec<f64> = (0..n)
            .map(|i| self.a.diag[i] - shift * self.b[i])
            .collect();
        let sub = self.a.off.clone();
        let sup = self.a.off.clone();

        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i * 2654435761) % 97) as f64 / 97.0)
            .collect();
        normalize_b(&mut x, &self.b);
        let mut last = f64::INFINITY;
        for _ in 0..8 {
            let rhs: Vec<f64> = (0..n).map(|i| self.b[i] * x[i]).collect();
            let mut y = solve(&sub, &diag, &sup, &rhs)?;
            let norm = normalize_b(&mut y, &self.b);
            // Converged when the iterate stops changing.
            let diff: f64 = y
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b).abs().min((a + b).abs()))
                .fold(0.0, f64::max);
            x = y;
            if diff < 1e-12 || norm == last {
                break;
            }
            last = norm;
        }
        Ok(x)
    }
}

/// Normalize `x` so `x^T B x = 1`; returns the previous B-norm.
pub fn normalize_b(x: &mut [f64], b: &[f64]) -> f64 {
    let norm: f64 = x
        .iter()
        .zip(b)
        .map(|(v, w)| v * v * w)
        .sum::<f64>()
        .sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

/// Cosine of the angle between `x` and `y` in the B-weighted inner product.
pub fn cosine_b(x: &[f64], y: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).zip(b).map(|((a, c), w)| a * c * w).sum();
    let nx: f64 = x.iter().zip(b).map(|(a, w)| a * a * w).sum::<f64>().sqrt();
    let ny: f64 = y.iter().zip(b).map(|(a, w)| a * a * w).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        0.0
    } else {
        (dot / (nx * ny)).abs()
    }
}
