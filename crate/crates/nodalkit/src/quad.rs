//! Composite quadrature on uniform grids.
//!
//! Everything integrated here decays exponentially toward the window edges,
//! so composite Simpson with a modest step is accurate to near round-off.

/// Composite Simpson rule over uniformly spaced samples with step `h`.
///
/// Handles any sample count >= 2: an odd panel count is closed with a
/// Simpson 3/8 rule on the last three panels.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2, "simpson needs at least two samples");
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let panels = n - 1;
    let (simpson_end, tail) = if panels % 2 == 0 {
        (n, 0.0)
    } else if n >= 4 {
        // 3/8 rule on the final three panels.
        let t = 3.0 * h / 8.0
            * (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1]);
        (n - 3, t)
    } else {
        // Exactly three samples plus a leftover cannot happen (panels odd, n=3
        // means panels=2 which is even), so this only guards tiny inputs.
        return 0.5 * h * (values[0] + 2.0 * values[1] + values[2]);
    };
    let mut sum4 = 0.0;
    let mut sum2 = 0.0;
    let mut i = 1;
    while i + 1 < simpson_end {
        sum4 += values[i];
        if i + 2 < simpson_end {
            sum2 += values[i + 1];
        }
        i += 2;
    }
    h / 3.0 * (values[0] + values[simpson_end - 1] + 4.0 * sum4 + 2.0 * sum2) + tail
}

/// Integrate `f` over `[a, b]` by composite Simpson with `n` panels
/// (`n` is rounded up to the next even number).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let values: Vec<f64> = (0..=n).map(|i| f(a + i as f64 * h)).collect();
    simpson(&values, h)
}

/// Integrate with one step-halving Richardson check. Returns the refined
/// value and the difference between the two levels.
pub fn integrate_checked<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> (f64, f64) {
    let coarse = integrate(f, a, b, n);
    let fine = integrate(f, a, b, 2 * n);
    (fine, (fine - coarse).abs())
}

/// Trapezoid rule over uniformly spaced samples.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2);
    let interior: f64 = values[1..n - 1].iter().sum();
    h * (0.5 * (values[0] + values[n - 1]) + interior)
}
