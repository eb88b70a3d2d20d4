//! The Emden-Fowler change of variables and the weighted energy structure.
//!
//! `v(t) = r^alpha u(r)` with `r = e^t` and `alpha = 2/(p-1)` turns the
//! radial equation into
//!
//! ```text
//! v'' - beta v' - (gamma + e^{2t}) v + |v|^{p-1} v = 0
//! ```
//!
//! with `beta = (N-2)^2 eps / (4 - (N-2) eps)` and
//! `gamma = (N-2)^2/4 - beta^2/4`. All inner products carry the weight
//! `e^{-beta t}`.

use crate::error::{Error, Result};
use crate::grid::{argmax, argmin, deriv1_4th, Grid};
use crate::quad::simpson;
use serde::{Deserialize, Serialize};

/// All scalar parameters attached to one value of the subcriticality eps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FowlerParams {
    pub eps: f64,
    pub n_dim: usize,
    /// p = (N+2)/(N-2) - eps
    pub p: f64,
    /// Drift coefficient.
    pub beta: f64,
    /// Potential constant; gamma + beta^2/4 = gamma0 exactly.
    pub gamma: f64,
    /// (N-2)^2/4
    pub gamma0: f64,
    /// alpha = 2/(p-1)
    pub alpha_exp: f64,
}

/// Derive all transform parameters from `(eps, N)`.
pub fn params_of(eps: f64, n_dim: usize) -> Result<FowlerParams> {
    if n_dim < 3 {
        return Err(Error::domain("dimension must be >= 3"));
    }
    let nm2 = (n_dim - 2) as f64;
    if !(0.0..4.0 / nm2).contains(&eps) {
        return Err(Error::domain(format!(
            "eps must lie in [0, {:.6}) for N = {n_dim}",
            4.0 / nm2
        )));
    }
    let p = (nm2 + 4.0) / nm2 - eps;
    let beta = nm2 * nm2 * eps / (4.0 - nm2 * eps);
    let gamma0 = nm2 * nm2 / 4.0;
    Ok(FowlerParams {
        eps,
        n_dim,
        p,
        beta,
        gamma: gamma0 - 0.25 * beta * beta,
        gamma0,
        alpha_exp: 2.0 / (p - 1.0),
    })
}

/// Parameters from a given subcritical exponent.
pub fn params_of_p(p: f64, n_dim: usize) -> Result<FowlerParams> {
    let nm2 = (n_dim - 2) as f64;
    params_of((nm2 + 4.0) / nm2 - p, n_dim)
}

impl FowlerParams {
    pub fn profile(&self) -> Result<crate::special::ProfileConstants> {
        crate::special::ProfileConstants::new(self.n_dim, self.p)
    }
}

// ---------------------------------------------------------------------------
// Radial profiles.
// ---------------------------------------------------------------------------

/// Far-field model `c r^{-(N-1)/2} e^{-r} (a0 + a1/r + a2/r^2)` fitted on a
/// matching window; the polynomial factors are the first terms of the
/// large-r expansion of the linear equation `Delta u - u = 0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TailFit {
    pub coeff: f64,
    pub r_match: f64,
    pub window: (f64, f64),
    /// Largest relative mismatch of the model over the fit window.
    pub mismatch: f64,
}

impl TailFit {
    pub fn series(n_dim: usize) -> [f64; 3] {
        // Asymptotic series of K_nu with nu = (N-2)/2; nu2 stands for 4 nu^2.
        let nu2 = (n_dim - 2) as f64 * (n_dim - 2) as f64;
        let a1 = (nu2 - 1.0) / 8.0;
        let a2 = (nu2 - 1.0) * (nu2 - 9.0) / 128.0;
        [1.0, a1, a2]
    }

    pub fn eval(&self, r: f64, n_dim: usize) -> (f64, f64) {
        let [a0, a1, a2] = Self::series(n_dim);
        let q = (n_dim - 1) as f64 / 2.0;
        let poly = a0 + a1 / r + a2 / (r * r);
        let dpoly = -a1 / (r * r) - 2.0 * a2 / (r * r * r);
        let base = self.coeff * r.powf(-q) * (-r).exp();
        let u = base * poly;
        let du = base * (dpoly - poly * (1.0 + q / r));
        (u, du)
    }
}

/// A radial profile u(r) on a strictly increasing grid, with derivative
/// values for Hermite evaluation between grid points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialSolution {
    pub grid_r: Vec<f64>,
    pub values_u: Vec<f64>,
    pub values_du: Vec<f64>,
    /// Height at the origin.
    pub alpha0: f64,
    /// Zero locations, strictly increasing.
    pub nodes: Vec<f64>,
    pub n_dim: usize,
    pub p: f64,
    /// True when the profile came from an origin Taylor start, in which case
    /// evaluation below the first grid point uses the series.
    pub origin_taylor: bool,
    pub tail: Option<TailFit>,
}

/// Taylor coefficients of the regular solution at the origin:
/// `u = a + c2 r^2 + c4 r^4 + O(r^6)`.
pub fn origin_taylor_coeffs(alpha0: f64, n_dim: usize, p: f64) -> (f64, f64) {
    let n = n_dim as f64;
    let c2 = (alpha0 - alpha0.abs().powf(p - 1.0) * alpha0) / (2.0 * n);
    let c4 = c2 * (1.0 - p * alpha0.abs().powf(p - 1.0)) / (4.0 * (n + 2.0));
    (c2, c4)
}

impl RadialSolution {
    /// Evaluate `(u, u')` anywhere: Taylor series below the grid, cubic
    /// Hermite interpolation on it, tail model beyond it.
    pub fn eval(&self, r: f64) -> Result<(f64, f64)> {
        let r0 = self.grid_r[0];
        let r_end = *self.grid_r.last().unwrap();
        if r < r0 {
            if self.origin_taylor {
                let (c2, c4) = origin_taylor_coeffs(self.alpha0, self.n_dim, self.p);
                let u = self.alpha0 + c2 * r * r + c4 * r.powi(4);
                let du = 2.0 * c2 * r + 4.0 * c4 * r.powi(3);
                return Ok((u, du));
            }
            return Err(Error::grid(format!("r = {r:.3e} below profile grid")));
        }
        if r > r_end {
            if let Some(tail) = &self.tail {
                return Ok(tail.eval(r, self.n_dim));
            }
            return Err(Error::grid(format!("r = {r:.3e} beyond profile grid")));
        }
        let j = match self
            .grid_r
            .binary_search_by(|probe| probe.partial_cmp(&r).unwrap())
        {
            Ok(j) => return Ok((self.values_u[j], self.values_du[j])),
            Err(j) => j - 1,
        };
        let h = self.grid_r[j + 1] - self.grid_r[j];
        let th = (r - self.grid_r[j]) / h;
        let (u0, u1) = (self.values_u[j], self.values_u[j + 1]);
        let (m0, m1) = (self.values_du[j] * h, self.values_du[j + 1] * h);
        let t2 = th * th;
        let t3 = t2 * th;
        let u = (2.0 * t3 - 3.0 * t2 + 1.0) * u0
            + (t3 - 2.0 * t2 + th) * m0
            + (-2.0 * t3 + 3.0 * t2) * u1
            + (t3 - t2) * m1;
        let du = ((6.0 * t2 - 6.0 * th) * u0
            + (3.0 * t2 - 4.0 * th + 1.0) * m0
            + (6.0 * th - 6.0 * t2) * u1
            + (3.0 * t2 - 2.0 * th) * m1)
            / h;
        Ok((u, du))
    }

    /// u'' from the radial equation.
    pub fn second_from_ode(&self, r: f64, u: f64, du: f64) -> f64 {
        let n = self.n_dim as f64;
        -(n - 1.0) / r * du + u - u.abs().powf(self.p - 1.0) * u
    }
}

/// A profile v(t) in Fowler variables on a uniform grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformedSolution {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub params: FowlerParams,
}

impl TransformedSolution {
    /// Sign changes of v, refined by linear interpolation.
    pub fn nodes(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..self.grid.n - 1 {
            let (a, b) = (self.values[i], self.values[i + 1]);
            if a == 0.0 {
                out.push(self.grid.t(i));
            } else if a * b < 0.0 {
                out.push(self.grid.t(i) + self.grid.h * a / (a - b));
            }
        }
        out
    }

    /// Location of the maximum, refined by a parabolic fit through the
    /// discrete peak.
    pub fn argmax_t(&self) -> f64 {
        self.refine_extremum(argmax(&self.values))
    }

    /// Location of the minimum.
    pub fn argmin_t(&self) -> f64 {
        self.refine_extremum(argmin(&self.values))
    }

    fn refine_extremum(&self, i: usize) -> f64 {
        if i == 0 || i + 1 >= self.grid.n {
            return self.grid.t(i);
        }
        let (a, b, c) = (self.values[i - 1], self.values[i], self.values[i + 1]);
        let denom = a - 2.0 * b + c;
        if denom == 0.0 {
            return self.grid.t(i);
        }
        self.grid.t(i) + 0.5 * self.grid.h * (a - c) / denom
    }
}

/// Transform a radial profile to Fowler variables on the given grid.
pub fn to_fowler(
    u: &RadialSolution,
    params: &FowlerParams,
    grid: Grid,
) -> Result<TransformedSolution> {
    if (u.p - params.p).abs() > 1e-12 || u.n_dim != params.n_dim {
        return Err(Error::grid("profile and parameters disagree on (N, p)"));
    }
    let alpha = params.alpha_exp;
    let mut values = Vec::with_capacity(grid.n);
    for t in grid.points() {
        let r = t.exp();
        let (uv, _) = u.eval(r)?;
        values.push((alpha * t).exp() * uv);
    }
    Ok(TransformedSolution {
        grid,
        values,
        params: *params,
    })
}

/// Invert the transform on the grid `r_i = e^{t_i}`.
pub fn from_fowler(v: &TransformedSolution) -> RadialSolution {
    let alpha = v.params.alpha_exp;
    let dv = deriv1_4th(&v.values, v.grid.h);
    let mut grid_r = Vec::with_capacity(v.grid.n);
    let mut values_u = Vec::with_capacity(v.grid.n);
    let mut values_du = Vec::with_capacity(v.grid.n);
    for (i, t) in v.grid.points().enumerate() {
        let r = t.exp();
        grid_r.push(r);
        values_u.push((-alpha * t).exp() * v.values[i]);
        // u'(r) = e^{-(alpha+1) t} (v' - alpha v)
        values_du.push((-(alpha + 1.0) * t).exp() * (dv[i] - alpha * v.values[i]));
    }
    let nodes = v.nodes().iter().map(|t| t.exp()).collect();
    RadialSolution {
        alpha0: values_u[0],
        grid_r,
        values_u,
        values_du,
        nodes,
        n_dim: v.params.n_dim,
        p: v.params.p,
        origin_taylor: false,
        tail: None,
    }
}

// ---------------------------------------------------------------------------
// Weighted products and energies.
// ---------------------------------------------------------------------------

/// H inner product of two grid functions on a common grid:
/// `int [f' g' + (gamma + e^{2t}) f g] e^{-beta t} dt`.
///
/// The value depends on the truncation window whenever the integrand does
/// not decay inside it (for N = 3, 4 a raw profile tail makes the `e^{2t}`
/// term grow); callers choose the window.
pub fn weighted_inner(f: &[f64], g: &[f64], grid: &Grid, params: &FowlerParams) -> f64 {
    assert_eq!(f.len(), grid.n);
    assert_eq!(g.len(), grid.n);
    let df = deriv1_4th(f, grid.h);
    let dg = deriv1_4th(g, grid.h);
    let vals: Vec<f64> = (0..grid.n)
        .map(|i| {
            let t = grid.t(i);
            (df[i] * dg[i] + (params.gamma + (2.0 * t).exp()) * f[i] * g[i])
                * (-params.beta * t).exp()
        })
        .collect();
    simpson(&vals, grid.h)
}

/// Weighted L2 product `int f g e^{-beta t} dt`.
pub fn weighted_l2(f: &[f64], g: &[f64], grid: &Grid, params: &FowlerParams) -> f64 {
    assert_eq!(f.len(), grid.n);
    assert_eq!(g.len(), grid.n);
    let vals: Vec<f64> = (0..grid.n)
        .map(|i| {
            let t = grid.t(i);
            f[i] * g[i] * (-params.beta * t).exp()
        })
        .collect();
    simpson(&vals, grid.h)
}

/// Energy value together with the size of the boundary terms it neglected.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Energy {
    pub value: f64,
    /// Largest endpoint magnitude of the confined density
    /// `(gamma + e^{2t}) v^2 e^{-beta t}`; a truncation warning when large.
    pub boundary_defect: f64,
}

impl Energy {
    pub fn is_truncated(&self, tol: f64) -> bool {
        self.boundary_defect > tol
    }
}

/// The functional
/// `E(v) = 1/2 int [v'^2 + (gamma+e^{2t}) v^2] e^{-bt} - 1/(p+1) int |v|^{p+1} e^{-bt}`.
pub fn energy(v: &TransformedSolution) -> Energy {
    let params = &v.params;
    let dv = deriv1_4th(&v.values, v.grid.h);
    let p1 = params.p + 1.0;
    let vals: Vec<f64> = (0..v.grid.n)
        .map(|i| {
            let t = v.grid.t(i);
            let vv = v.values[i];
            let quad = 0.5 * (dv[i] * dv[i] + (params.gamma + (2.0 * t).exp()) * vv * vv);
            (quad - vv.abs().powf(p1) / p1) * (-params.beta * t).exp()
        })
        .collect();
    let confined = |i: usize| {
        let t = v.grid.t(i);
        let vv = v.values[i];
        ((params.gamma + (2.0 * t).exp()) * vv * vv * (-params.beta * t).exp()).abs()
    };
    Energy {
        value: simpson(&vals, v.grid.h),
        boundary_defect: confined(0).max(confined(v.grid.n - 1)),
    }
}

/// The radial energy
/// `1/2 int (u'^2 + u^2) r^{N-1} dr - 1/(p+1) int |u|^{p+1} r^{N-1} dr`,
/// integrated over the native (generally non-uniform) grid by a
/// derivative-corrected trapezoid rule, with the origin patch added in
/// closed form.
pub fn energy_radial(u: &RadialSolution) -> f64 {
    let p = u.p;
    let n = u.n_dim as f64;
    let f = |r: f64, uu: f64, du: f64| -> (f64, f64) {
        let rp = r.powf(n - 1.0);
        let upow = uu.abs().powf(p + 1.0);
        let val = (0.5 * (du * du + uu * uu) - upow / (p + 1.0)) * rp;
        let d2 = u.second_from_ode(r, uu, du);
        let dval = (du * d2 + uu * du - uu.abs().powf(p - 1.0) * uu * du) * rp
            + (n - 1.0) / r * val;
        (val, dval)
    };
    let mut total = 0.0;
    for i in 0..u.grid_r.len() - 1 {
        let (r0, r1) = (u.grid_r[i], u.grid_r[i + 1]);
        let h = r1 - r0;
        let (f0, d0) = f(r0, u.values_u[i], u.values_du[i]);
        let (f1, d1) = f(r1, u.values_u[i + 1], u.values_du[i + 1]);
        total += 0.5 * h * (f0 + f1) + h * h / 12.0 * (d0 - d1);
    }
    if u.origin_taylor {
        // [0, r0] patch: u ~ alpha0, u' ~ 2 c2 r.
        let r0 = u.grid_r[0];
        let a = u.alpha0;
        let (c2, _) = origin_taylor_coeffs(a, u.n_dim, p);
        total += (0.5 * a * a - a.abs().powf(p + 1.0) / (p + 1.0)) * r0.powf(n) / n
            + 2.0 * c2 * c2 * r0.powf(n + 2.0) / (n + 2.0);
    }
    total
}

/// The three integral identities linking radial and Fowler quadratures:
/// returns (radial, fowler) pairs for the gradient, mass and power integrals.
pub fn fowler_identities(u: &RadialSolution, v: &TransformedSolution) -> [(f64, f64); 3] {
    let params = &v.params;
    let n = u.n_dim as f64;
    let radial = |dens: &dyn Fn(f64, f64, f64) -> f64| -> f64 {
        let mut total = 0.0;
        for i in 0..u.grid_r.len() - 1 {
            let (r0, r1) = (u.grid_r[i], u.grid_r[i + 1]);
            let h = r1 - r0;
            let f0 = dens(r0, u.values_u[i], u.values_du[i]) * r0.powf(n - 1.0);
            let f1 = dens(r1, u.values_u[i + 1], u.values_du[i + 1]) * r1.powf(n - 1.0);
            total += 0.5 * h * (f0 + f1);
        }
        total
    };
    let dv = deriv1_4th(&v.values, v.grid.h);
    let fowler = |dens: &dyn Fn(f64, f64, f64) -> f64| -> f64 {
        let vals: Vec<f64> = (0..v.grid.n)
            .map(|i| {
                let t = v.grid.t(i);
                dens(t, v.values[i], dv[i]) * (-params.beta * t).exp()
            })
            .collect();
        simpson(&vals, v.grid.h)
    };
    let grad_r = radial(&|_r, _u, du| du * du);
    let grad_f = fowler(&|_t, vv, dvv| dvv * dvv + params.gamma * vv * vv);
    let mass_r = radial(&|_r, uu, _| uu * uu);
    let mass_f = fowler(&|t, vv, _| (2.0 * t).exp() * vv * vv);
    let pow_r = radial(&|_r, uu, _| uu.abs().powf(params.p + 1.0));
    let pow_f = fowler(&|_t, vv, _| vv.abs().powf(params.p + 1.0));
    [(grad_r, grad_f), (mass_r, mass_f), (pow_r, pow_f)]
}
