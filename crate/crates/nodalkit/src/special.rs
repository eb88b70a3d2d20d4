//! Closed-form ingredients: the 1-D profile `w`, its tail amplitude,
//! modified Bessel functions of the second kind, and the outer correction
//! profiles `phi_N` that cancel the profile tail against the `e^{2t}` well.
//!
//! The profile is the unique positive even solution of
//! `w'' - gamma0 w + w^p = 0` with `gamma0 = (N-2)^2/4`:
//!
//! ```text
//! w(t) = gamma0^{1/(p-1)} ((p+1)/2)^{1/(p-1)} cosh((p-1) sqrt(gamma0) t / 2)^{-2/(p-1)}
//! ```
//!
//! Everything here is a pure scalar function; callers build grids.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Scalar constants attached to one `(N, p)` profile.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProfileConstants {
    pub n_dim: usize,
    pub p: f64,
    /// (N-2)^2 / 4
    pub gamma0: f64,
    /// Tail coefficient: w(t) = amplitude * e^{-sqrt(gamma0) |t|} (1 + o(1)).
    pub amplitude: f64,
    /// (N-2)^{-(N-2)}, the scaling constant of the correction profile
    /// (only meaningful for 3 <= N <= 6).
    pub lambda_n: Option<f64>,
}

impl ProfileConstants {
    pub fn new(n_dim: usize, p: f64) -> Result<Self> {
        if n_dim < 3 {
            return Err(Error::domain("dimension must be >= 3"));
        }
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::domain("exponent must satisfy p > 1"));
        }
        let nm2 = (n_dim - 2) as f64;
        let gamma0 = nm2 * nm2 / 4.0;
        let inv = 1.0 / (p - 1.0);
        let amplitude = gamma0.powf(inv) * (0.5 * (p + 1.0)).powf(inv) * 2f64.powf(2.0 * inv);
        let lambda_n = if n_dim <= 6 {
            Some(nm2.powi(-(n_dim as i32 - 2)))
        } else {
            None
        };
        Ok(ProfileConstants {
            n_dim,
            p,
            gamma0,
            amplitude,
            lambda_n,
        })
    }

    /// Profile at the critical exponent p = (N+2)/(N-2).
    pub fn critical(n_dim: usize) -> Result<Self> {
        let nm2 = (n_dim - 2) as f64;
        Self::new(n_dim, (nm2 + 4.0) / nm2)
    }

    #[inline]
    fn half_rate(&self) -> f64 {
        // (p-1) sqrt(gamma0) / 2, the cosh rate.
        0.5 * (self.p - 1.0) * self.gamma0.sqrt()
    }
}

/// The profile w(t). Positive, even, maximal at t = 0, with tail
/// `amplitude * e^{-sqrt(gamma0)|t|}`.
pub fn w_value(t: f64, pc: &ProfileConstants) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("profile argument must be finite"));
    }
    Ok(w_value_unchecked(t, pc))
}

#[inline]
pub fn w_value_unchecked(t: f64, pc: &ProfileConstants) -> f64 {
    // A (e^{kx} + e^{-kx})^{-m} = A e^{-sqrt(gamma0)|x|} (1 + e^{-2k|x|})^{-m},
    // overflow-free for all t (m k = sqrt(gamma0)).
    let m = 2.0 / (pc.p - 1.0);
    let k = pc.half_rate();
    let x = t.abs();
    pc.amplitude * (-pc.gamma0.sqrt() * x - m * (-2.0 * k * x).exp().ln_1p()).exp()
}

/// Analytic derivative w'(t) = -sqrt(gamma0) w(t) tanh((p-1) sqrt(gamma0) t / 2).
pub fn w_prime(t: f64, pc: &ProfileConstants) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("profile argument must be finite"));
    }
    Ok(w_prime_unchecked(t, pc))
}

#[inline]
pub fn w_prime_unchecked(t: f64, pc: &ProfileConstants) -> f64 {
    -pc.gamma0.sqrt() * w_value_unchecked(t, pc) * (pc.half_rate() * t).tanh()
}

/// w''(t) from the defining equation.
#[inline]
pub fn w_second_unchecked(t: f64, pc: &ProfileConstants) -> f64 {
    let w = w_value_unchecked(t, pc);
    pc.gamma0 * w - w.powf(pc.p)
}

/// Tail coefficient A with `w(t) -> A e^{-sqrt(gamma0) t}` as `t -> infinity`.
pub fn amplitude(pc: &ProfileConstants) -> f64 {
    pc.amplitude
}

// ---------------------------------------------------------------------------
// Modified Bessel functions of the second kind.
// ---------------------------------------------------------------------------

fn bessel_i0(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn bessel_i1(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 0.5 * z;
    let mut sum = term;
    for k in 1..200 {
        term *= q / ((k * (k + 1)) as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn bessel_i2(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 0.25 * z * z / 2.0;
    let mut sum = term;
    for k in 1..200 {
        term *= q / ((k * (k + 2)) as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// K0 and K1 by the ascending log series; accurate for 0 < z <= 2.
fn bessel_k01_series(z: f64) -> (f64, f64) {
    let lg = (0.5 * z).ln();
    let q = 0.25 * z * z;

    // K0 = sum_k (H_k - gamma - ln(z/2)) q^k / (k!)^2
    let mut term = 1.0;
    let mut h = 0.0;
    let mut k0 = -(lg + EULER_GAMMA);
    for k in 1..200 {
        term *= q / ((k * k) as f64);
        h += 1.0 / k as f64;
        let add = term * (h - EULER_GAMMA - lg);
        k0 += add;
        if term < 1e-18 {
            break;
        }
    }

    // K1 = 1/z + ln(z/2) I1(z) + (z/4) sum_k (2gamma - H_k - H_{k+1}) q^k / (k! (k+1)!)
    let mut term1 = 1.0; // q^k / (k! (k+1)!)
    let mut hk = 0.0;
    let mut hk1 = 1.0;
    let mut s1 = 2.0 * EULER_GAMMA - hk - hk1;
    for k in 1..200 {
        term1 *= q / ((k * (k + 1)) as f64);
        hk += 1.0 / k as f64;
        hk1 += 1.0 / (k + 1) as f64;
        s1 += term1 * (2.0 * EULER_GAMMA - hk - hk1);
        if term1 < 1e-18 {
            break;
        }
    }
    let k1 = 1.0 / z + lg * bessel_i1(z) + 0.25 * z * s1;
    (k0, k1)
}

/// K0 and K1 by the Steed/Thompson-Barnett continued fraction; for z >= 2.
fn bessel_k01_cf(z: f64) -> (f64, f64) {
    let mut bi = 2.0 * (1.0 + z);
    let mut di = 1.0 / bi;
    let mut delhi = di;
    let mut hi = di;
    let mut qi = 0.0;
    let mut qip1 = 1.0;
    let mut ai = -0.25; // nu = 0
    let a1 = ai;
    let mut ci = -ai;
    let mut big_q = -ai;
    let mut s = 1.0 + big_q * delhi;
    for i in 2..10_000 {
        ai -= 2.0 * (i as f64 - 1.0);
        ci = -ai * ci / i as f64;
        let tmp = (qi - bi * qip1) / ai;
        qi = qip1;
        qip1 = tmp;
        big_q += ci * qip1;
        bi += 2.0;
        di = 1.0 / (bi + ai * di);
        delhi = (bi * di - 1.0) * delhi;
        hi += delhi;
        let dels = big_q * delhi;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = -a1 * hi;
    let k0 = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

fn bessel_k01(z: f64) -> (f64, f64) {
    if z < 2.0 {
        bessel_k01_series(z)
    } else {
        bessel_k01_cf(z)
    }
}

/// Modified Bessel function of the second kind, orders 0..=2.
pub fn bessel_k(order: u32, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain("bessel_k requires z > 0"));
    }
    let (k0, k1) = bessel_k01(z);
    Ok(match order {
        0 => k0,
        1 => k1,
        2 => k0 + 2.0 * k1 / z,
        _ => return Err(Error::domain("bessel_k supports orders 0, 1, 2")),
    })
}

// ---------------------------------------------------------------------------
// Correction profiles.
// ---------------------------------------------------------------------------

/// 1 - e^{-x}, accurate for all x >= 0.
#[inline]
fn om_exp(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// 1 - (1+y) e^{-y} = (e^y - 1 - y) e^{-y}, stable for all y >= 0.
fn om_poly1(y: f64) -> f64 {
    (y.exp_m1() - y) * (-y).exp()
}

/// 1 - (1+2y) e^{-y} (derivative counterpart of `om_exp` for N = 3).
fn om_exp_prime(y: f64) -> f64 {
    -(-y).exp_m1() - 2.0 * y * (-y).exp()
}

/// 1 - z K1(z), the cancellation-free form used by the N = 4 profile.
fn om_z_k1(z: f64) -> f64 {
    if z < 0.5 {
        // 1 - z K1 = -z ln(z/2) I1(z) + (z^2/4) sum_k (H_k + H_{k+1} - 2 gamma) q^k/(k!(k+1)!)
        let lg = (0.5 * z).ln();
        let q = 0.25 * z * z;
        let mut term = 1.0;
        let mut hk = 0.0;
        let mut hk1 = 1.0;
        let mut s = hk + hk1 - 2.0 * EULER_GAMMA;
        for k in 1..60 {
            term *= q / ((k * (k + 1)) as f64);
            hk += 1.0 / k as f64;
            hk1 += 1.0 / (k + 1) as f64;
            s += term * (hk + hk1 - 2.0 * EULER_GAMMA);
            if term < 1e-20 {
                break;
            }
        }
        -z * lg * bessel_i1(z) + 0.25 * z * z * s
    } else {
        let (_, k1) = bessel_k01(z);
        1.0 - z * k1
    }
}

/// 1 - (z^2/2) K2(z), the cancellation-free form used by the N = 6 profile.
fn om_z2_k2(z: f64) -> f64 {
    if z < 0.5 {
        // = z^2/4 + (z^2/2) ln(z/2) I2(z)
        //   - (z^4/16) sum_k (H_k + H_{k+2} - 2 gamma) q^k / (k!(k+2)!)
        let lg = (0.5 * z).ln();
        let q = 0.25 * z * z;
        let mut term = 0.5; // q^k / (k!(k+2)!) at k=0: 1/2
        let mut hk = 0.0;
        let mut hk2 = 1.5;
        let mut s = term * (hk + hk2 - 2.0 * EULER_GAMMA);
        for k in 1..60 {
            term *= q / ((k * (k + 2)) as f64);
            hk += 1.0 / k as f64;
            hk2 += 1.0 / (k + 2) as f64;
            s += term * (hk + hk2 - 2.0 * EULER_GAMMA);
            if term < 1e-20 {
                break;
            }
        }
        0.25 * z * z + 0.5 * z * z * lg * bessel_i2(z) - z.powi(4) / 16.0 * s
    } else {
        let (k0, k1) = bessel_k01(z);
        let k2 = k0 + 2.0 * k1 / z;
        1.0 - 0.5 * z * z * k2
    }
}

/// 2/z^2 - K2(z) - (z/2) K1(z), the cancellation-free combination that the
/// N = 6 profile derivative needs (all three terms are ~2/z^2 as z -> 0).
fn om6_prime(z: f64) -> f64 {
    if z < 0.5 {
        let lg = (0.5 * z).ln();
        let q = 0.25 * z * z;
        let mut term = 0.5;
        let mut hk = 0.0;
        let mut hk2 = 1.5;
        let mut s = term * (hk + hk2 - 2.0 * EULER_GAMMA);
        for k in 1..60 {
            term *= q / ((k * (k + 2)) as f64);
            hk += 1.0 / k as f64;
            hk2 += 1.0 / (k + 2) as f64;
            s += term * (hk + hk2 - 2.0 * EULER_GAMMA);
            if term < 1e-20 {
                break;
            }
        }
        lg * bessel_i2(z) - 0.125 * z * z * s + 0.5 * om_z_k1(z)
    } else {
        let (k0, k1) = bessel_k01(z);
        let k2 = k0 + 2.0 * k1 / z;
        2.0 / (z * z) - k2 - 0.5 * z * k1
    }
}

/// Normalized correction profile `phi_N(s)`: the decaying solution of
///
/// ```text
/// phi'' - (gamma0 + e^{2s}) phi = e^{-(N-6)s/2}
/// ```
///
/// Identically zero for N > 6. Lies strictly between `-e^{-(N-2)s/2}` and 0
/// for 3 <= N <= 6.
pub fn correction_profile(s: f64, n_dim: usize) -> Result<f64> {
    if n_dim < 3 {
        return Err(Error::domain("dimension must be >= 3"));
    }
    if n_dim > 6 {
        return Ok(0.0);
    }
    let nm2 = (n_dim - 2) as f64;
    if s > 300.0 {
        // The bracket below is 1 to machine precision long before e^s overflows.
        return Ok(-(-0.5 * nm2 * s).exp());
    }
    let es = s.exp();
    Ok(match n_dim {
        3 => -(-0.5 * s).exp() * om_exp(es),
        4 => -(-s).exp() * om_z_k1(es),
        5 => -(-1.5 * s).exp() * om_poly1(es),
        6 => -(-2.0 * s).exp() * om_z2_k2(es),
        _ => unreachable!(),
    })
}

/// Analytic derivative of `correction_profile` with respect to `s`.
pub fn correction_profile_prime(s: f64, n_dim: usize) -> Result<f64> {
    if n_dim < 3 {
        return Err(Error::domain("dimension must be >= 3"));
    }
    if n_dim > 6 {
        return Ok(0.0);
    }
    let nm2 = (n_dim - 2) as f64;
    if s > 300.0 {
        return Ok(0.5 * nm2 * (-0.5 * nm2 * s).exp());
    }
    let es = s.exp();
    Ok(match n_dim {
        3 => 0.5 * (-0.5 * s).exp() * om_exp_prime(es),
        4 => (-s).exp() * om_z_k1(es) - es * bessel_k01(es).0,
        5 => (-1.5 * s).exp() * (1.5 * om_poly1(es) - (2.0 * s).exp() * (-es).exp()),
        6 => om6_prime(es),
        _ => unreachable!(),
    })
}

/// Second derivative of the correction profile from its defining equation.
#[inline]
pub fn correction_profile_second(s: f64, n_dim: usize) -> Result<f64> {
    if n_dim > 6 {
        return Ok(0.0);
    }
    let nm2 = (n_dim - 2) as f64;
    let gamma0 = nm2 * nm2 / 4.0;
    let phi = correction_profile(s, n_dim)?;
    let forcing = (-0.5 * (n_dim as f64 - 6.0) * s).exp();
    Ok((gamma0 + (2.0 * s).exp()) * phi + forcing)
}

// ---------------------------------------------------------------------------
// Pohozaev-type identities.
// ---------------------------------------------------------------------------

/// Quadrature window and resolution for the identity checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Integrate over [-half_width, half_width].
    pub half_width: f64,
    /// Simpson panel width.
    pub step: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            half_width: 60.0,
            step: 1e-3,
        }
    }
}

/// Relative residuals of the two integral identities linking
/// `int |w'|^2`, `int w^{p+1}` and `int w^2`:
///
/// ```text
/// int |w'|^2 = (1/2 - 1/(p+1)) int w^{p+1} = gamma0 (p-1)/(p+3) int w^2.
/// ```
pub fn pohozaev_check(pc: &ProfileConstants, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    if quad.half_width < 40.0 {
        return Err(Error::domain(
            "quadrature window must cover the decay (half width >= 40)",
        ));
    }
    let t1 = quad.half_width;
    let n = (2.0 * t1 / quad.step).ceil() as usize;
    let with_check = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
        let coarse = crate::quad::integrate(f, -t1, t1, n / 2);
        let fine = crate::quad::integrate(f, -t1, t1, n);
        let achieved = (fine - coarse).abs() / fine.abs().max(1e-300);
        if achieved > 1e-10 {
            return Err(Error::Convergence {
                what: "pohozaev quadrature".into(),
                achieved,
                required: 1e-10,
            });
        }
        Ok(fine)
    };
    let grad = with_check(&|t| w_prime_unchecked(t, pc).powi(2))?;
    let pot = with_check(&|t| w_value_unchecked(t, pc).powf(pc.p + 1.0))?;
    let mass = with_check(&|t| w_value_unchecked(t, pc).powi(2))?;

    let r1 = (grad - (0.5 - 1.0 / (pc.p + 1.0)) * pot).abs() / grad;
    let r2 = (grad - pc.gamma0 * (pc.p - 1.0) / (pc.p + 3.0) * mass).abs() / grad;
    Ok((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{deriv2_4th, Grid};
    use proptest::prelude::*;

    fn pc35() -> ProfileConstants {
        ProfileConstants::new(3, 5.0).unwrap()
    }

    #[test]
    fn profile_peak_value() {
        // Direct evaluation of the closed form at t = 0.
        let w0 = w_value(0.0, &pc35()).unwrap();
        assert!((w0 - 0.75f64.powf(0.25)).abs() < 1e-14);
        assert!((w0 - 0.930605).abs() < 1e-6);
    }

    #[test]
    fn profile_rejects_non_finite() {
        assert!(w_value(f64::NAN, &pc35()).is_err());
        assert!(w_prime(f64::INFINITY, &pc35()).is_err());
    }

    #[test]
    fn profile_tail_matches_amplitude() {
        let pc = pc35();
        let a = amplitude(&pc);
        assert!((a - 0.75f64.powf(0.25) * 2f64.sqrt()).abs() < 1e-14);
        assert!((a - 1.316074).abs() < 1e-6);
        let ratio = w_value(20.0, &pc).unwrap() / (a * (-10.0f64).exp());
        assert!((ratio - 1.0).abs() < 1e-8);
        // And the derivative tail.
        let ratio_d = w_prime(20.0, &pc).unwrap() / (-0.5 * a * (-10.0f64).exp());
        assert!((ratio_d - 1.0).abs() < 1e-6);
    }

    #[test]
    fn amplitude_regression_fit() {
        // log w(t) + sqrt(gamma0) t should be flat on [15, 25] with value log A.
        let pc = pc35();
        let g = Grid::new(15.0, 25.0, 0.01).unwrap();
        let vals: Vec<f64> = g
            .points()
            .map(|t| w_value_unchecked(t, &pc).ln() + 0.5 * t)
            .collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let spread = vals
            .iter()
            .fold(0.0f64, |m, v| m.max((v - mean).abs()));
        assert!(spread < 1e-8);
        assert!((mean.exp() - amplitude(&pc)).abs() < 1e-6);
    }

    #[test]
    fn amplitude_exceeds_peak() {
        for (n, p) in [(3, 5.0), (3, 4.9), (4, 3.0), (5, 2.2), (7, 1.7)] {
            let pc = ProfileConstants::new(n, p).unwrap();
            assert!(amplitude(&pc) > w_value(0.0, &pc).unwrap());
        }
    }

    #[test]
    fn profile_prime_matches_central_difference() {
        let pc = pc35();
        let h = 1e-5;
        let fd =
            (w_value(1.0 + h, &pc).unwrap() - w_value(1.0 - h, &pc).unwrap()) / (2.0 * h);
        assert!((fd - w_prime(1.0, &pc).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn profile_satisfies_its_equation() {
        // Finite-difference residual of w'' - gamma0 w + w^p on |t| <= 30.
        // The N=6 profile peaks near 7, which puts the stencil round-off
        // floor above 1e-8; its bound is scaled accordingly.
        for (n, p, bound) in [
            (3, 5.0, 1e-8),
            (3, 4.9, 1e-8),
            (4, 3.0, 1e-8),
            (5, 2.2, 1e-8),
            (6, 1.9, 1e-7),
        ] {
            let pc = ProfileConstants::new(n, p).unwrap();
            let g = Grid::new(-30.0, 30.0, 1e-3).unwrap();
            let vals = g.sample(|t| w_value_unchecked(t, &pc));
            let d2 = deriv2_4th(&vals, g.h);
            let mut worst = 0.0f64;
            for i in 5..g.n - 5 {
                let res = d2[i] - pc.gamma0 * vals[i] + vals[i].powf(pc.p);
                worst = worst.max(res.abs());
            }
            assert!(worst < bound, "N={n} p={p}: residual {worst:.2e}");
        }
    }

    #[test]
    fn grad_integral_has_closed_form() {
        // For (N, p) = (3, 5): int |w'|^2 = c^2 pi / 8 with c = (3/4)^{1/4}.
        let pc = pc35();
        let val = crate::quad::integrate(
            |t| w_prime_unchecked(t, &pc).powi(2),
            -60.0,
            60.0,
            120_000,
        );
        let want = 0.75f64.sqrt() * std::f64::consts::PI / 8.0;
        assert!((val - want).abs() < 1e-8, "{val} vs {want}");
    }

    #[test]
    fn bessel_small_argument_limits() {
        let z = 1e-4;
        let k1 = bessel_k(1, z).unwrap();
        assert!((z * k1 - 1.0).abs() < 1e-3);
        let k2 = bessel_k(2, z).unwrap();
        assert!((z * z * k2 - 2.0).abs() < 1e-3);
    }

    /// Independent oracle: K_nu(z) = int_0^inf e^{-z cosh(theta)} cosh(nu theta) d theta.
    fn bessel_k_quadrature(nu: u32, z: f64) -> f64 {
        let theta_max = ((800.0 / z).max(4.0)).acosh() + 1.0;
        let n = 40_000;
        let h = theta_max / n as f64;
        let f = |theta: f64| (-z * theta.cosh()).exp() * (nu as f64 * theta).cosh();
        // Trapezoid: the integrand's odd derivatives vanish at both ends.
        let mut sum = 0.5 * (f(0.0) + f(theta_max));
        for i in 1..n {
            sum += f(i as f64 * h);
        }
        sum * h
    }

    #[test]
    fn bessel_matches_integral_representation() {
        for z in [0.05, 0.3, 1.0, 1.9, 2.0, 2.1, 3.7, 8.0, 20.0, 50.0] {
            for nu in [0u32, 1, 2] {
                let ours = bessel_k(nu, z).unwrap();
                let oracle = bessel_k_quadrature(nu, z);
                assert!(
                    (ours - oracle).abs() <= 1e-10 * oracle.abs().max(1e-300),
                    "K_{nu}({z}): {ours:.16e} vs {oracle:.16e}"
                );
            }
        }
    }

    #[test]
    fn bessel_rejects_nonpositive() {
        assert!(bessel_k(1, 0.0).is_err());
        assert!(bessel_k(2, -1.0).is_err());
    }

    #[test]
    fn bessel_decreasing_and_log_convex() {
        for nu in [1u32, 2] {
            let zs: Vec<f64> = (1..200).map(|i| 0.05 * i as f64).collect();
            let logs: Vec<f64> = zs.iter().map(|&z| bessel_k(nu, z).unwrap().ln()).collect();
            for i in 1..logs.len() {
                assert!(logs[i] < logs[i - 1], "K_{nu} not decreasing at {}", zs[i]);
            }
            for i in 1..logs.len() - 1 {
                assert!(
                    logs[i + 1] + logs[i - 1] - 2.0 * logs[i] > -1e-9,
                    "K_{nu} not log-convex at {}",
                    zs[i]
                );
            }
        }
    }

    #[test]
    fn correction_profile_values() {
        // phi_3(0) = -(1 - 1/e).
        let v = correction_profile(0.0, 3).unwrap();
        assert!((v + (1.0 - (-1.0f64).exp())).abs() < 1e-14);
        assert!((v + 0.632121).abs() < 1e-6);
        // N = 7: identically zero.
        for s in [-8.0, -1.0, 0.0, 2.5, 40.0] {
            assert_eq!(correction_profile(s, 7).unwrap(), 0.0);
        }
    }

    #[test]
    fn correction_profile_solves_its_equation() {
        // FD residual of phi'' - (gamma0 + e^{2s}) phi - e^{-(N-6)s/2} on [-10, 3].
        for n_dim in 3..=6usize {
            let g = Grid::new(-10.0 - 0.01, 3.0 + 0.01, 1e-3).unwrap();
            let vals = g.sample(|s| correction_profile(s, n_dim).unwrap());
            let d2 = deriv2_4th(&vals, g.h);
            let nm2 = (n_dim - 2) as f64;
            let gamma0 = nm2 * nm2 / 4.0;
            let mut worst = 0.0f64;
            for i in 4..g.n - 4 {
                let s = g.t(i);
                let res = d2[i]
                    - (gamma0 + (2.0 * s).exp()) * vals[i]
                    - (-0.5 * (n_dim as f64 - 6.0) * s).exp();
                worst = worst.max(res.abs());
            }
            assert!(worst < 1e-6, "N={n_dim}: residual {worst:.2e}");
        }
    }

    #[test]
    fn correction_profile_prime_matches_fd() {
        for n_dim in 3..=6usize {
            for s in [-12.0, -4.0, -0.7, 0.0, 1.3, 2.9] {
                let h = 1e-5;
                let fd = (correction_profile(s + h, n_dim).unwrap()
                    - correction_profile(s - h, n_dim).unwrap())
                    / (2.0 * h);
                let an = correction_profile_prime(s, n_dim).unwrap();
                assert!(
                    (fd - an).abs() < 1e-7 * (1.0 + an.abs()),
                    "N={n_dim} s={s}: {fd} vs {an}"
                );
            }
        }
    }

    #[test]
    fn correction_profile_between_bounds() {
        // Strict bounds; past s ~ 3.5 the bracket saturates to 1 in f64 and
        // the profile sits exactly on the lower bound, so stop before that.
        for n_dim in 3..=6usize {
            let nm2 = (n_dim - 2) as f64;
            for i in 0..=230 {
                let s = -20.0 + 0.1 * i as f64;
                let v = correction_profile(s, n_dim).unwrap();
                let bound = -(-0.5 * nm2 * s).exp();
                assert!(v < 0.0, "N={n_dim} s={s}: {v}");
                assert!(v > bound, "N={n_dim} s={s}: {v} vs {bound}");
            }
        }
    }

    #[test]
    fn pohozaev_identities_hold() {
        let quad = QuadratureSpec::default();
        for (n, p) in [(3usize, 5.0), (4, 2.9), (5, 2.2), (3, 4.9), (4, 3.0)] {
            let pc = ProfileConstants::new(n, p).unwrap();
            let (r1, r2) = pohozaev_check(&pc, &quad).unwrap();
            assert!(r1 < 1e-8, "N={n} p={p}: r1={r1:.2e}");
            assert!(r2 < 1e-8, "N={n} p={p}: r2={r2:.2e}");
        }
    }

    #[test]
    fn pohozaev_rejects_short_window() {
        let quad = QuadratureSpec {
            half_width: 10.0,
            step: 1e-3,
        };
        assert!(pohozaev_check(&pc35(), &quad).is_err());
    }

    proptest! {
        #[test]
        fn profile_even_positive_peaked(t in -80.0f64..80.0, seed in 0usize..5) {
            let cases = [(3usize, 5.0), (3, 4.5), (4, 3.0), (5, 2.2), (6, 1.8)];
            let (n, p) = cases[seed];
            let pc = ProfileConstants::new(n, p).unwrap();
            let w = w_value(t, &pc).unwrap();
            prop_assert!(w > 0.0);
            prop_assert!(w <= w_value(0.0, &pc).unwrap());
            prop_assert_eq!(w, w_value(-t, &pc).unwrap());
            // w' is odd.
            prop_assert!((w_prime(t, &pc).unwrap() + w_prime(-t, &pc).unwrap()).abs() < 1e-15);
        }

        #[test]
        fn correction_profile_negative_and_decaying(s in -25.0f64..5.0, n_dim in 3usize..7) {
            let v = correction_profile(s, n_dim).unwrap();
            prop_assert!(v <= 0.0);
            let nm2 = (n_dim - 2) as f64;
            prop_assert!(v >= -(-0.5 * nm2 * s).exp());
        }
    }
}
