//! Numerical integration used for exact density coefficients and the
//! closed-form divergence oracle.
//!
//! The default route is adaptive Simpson with an absolute tolerance,
//! recursing from a fixed panel decomposition of the interval (oscillatory
//! integrands such as high-order basis products must not be judged from a
//! single coarse panel). A fixed composite rule is provided for tabulated
//! densities, whose kinks defeat adaptivity.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let fm = f(m);
    if !fm.is_finite() {
        return Err(Error::QuadratureFailure(format!(
            "integrand not finite at {m}"
        )));
    }
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !flm.is_finite() || !frm.is_finite() {
        return Err(Error::QuadratureFailure("integrand not finite".into()));
    }
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailure(format!(
            "tolerance not reached on [{a}, {b}]"
        )));
    }
    let half_tol = 0.5 * tol;
    Ok(adapt(f, a, fa, m, fm, left, half_tol, depth + 1)?
        + adapt(f, m, fm, b, fb, right, half_tol, depth + 1)?)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to an absolute
/// tolerance, starting from `panels` equal subintervals.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    panels: usize,
) -> Result<f64> {
    let panels = panels.max(1);
    let panel_tol = abs_tol / panels as f64;
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + width * p as f64;
        let hi = if p + 1 == panels {
            b
        } else {
            a + width * (p + 1) as f64
        };
        let flo = f(lo);
        let fhi = f(hi);
        if !flo.is_finite() || !fhi.is_finite() {
            return Err(Error::QuadratureFailure("integrand not finite".into()));
        }
        let fm = f(0.5 * (lo + hi));
        if !fm.is_finite() {
            return Err(Error::QuadratureFailure("integrand not finite".into()));
        }
        let whole = simpson(flo, fm, fhi, hi - lo);
        total += adapt(f, lo, flo, hi, fhi, whole, panel_tol, 0)?;
    }
    Ok(total)
}

/// Composite Simpson rule with a fixed number of intervals.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals.max(1);
    let h = (b - a) / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let lo = a + h * i as f64;
        let hi = a + h * (i + 1) as f64;
        total += simpson(f(lo), f(0.5 * (lo + hi)), f(hi), hi - lo);
    }
    total
}
