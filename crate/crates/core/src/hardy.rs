//! Weighted Hardy operator and the weighted Fourier norm it controls for
//! nonincreasing functions.
//!
//! Since `|f^(z)| <= (pi/2) sqrt(10) int_0^{1/z} f` for nonincreasing `f`,
//!
//! ```text
//! ||f^||_{L^q(u)} <= (pi/2) sqrt(10) (int_0^inf (int_0^{1/z} f)^q u(z) dz)^{1/q}
//! ```
//!
//! and substituting `z -> 1/z` turns the right side into the weighted Hardy
//! quantity `(int_0^inf (int_0^z f)^q u(1/z) z^{-2} dz)^{1/q}`. Any constant
//! `C` in a Hardy inequality against `||f||_{Lambda_p(v)}` therefore gives
//! the Fourier constant `(pi/2) sqrt(10) C`.
//!
//! Weights are compactly supported step functions on `[0, inf)`, so every
//! integral over `(0, inf)` truncates exactly at the weight's support.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bounds::monotone_constant;
use crate::error::{Error, Result};
use crate::piecewise::{Function, StepFunction};
use crate::quad::{self, QuadOptions};
use crate::rearrange::lorentz_lambda_norm;
use crate::transform::fourier;

/// Relative tolerance of every quadrature in this module.
pub const RELATIVE_TOLERANCE: f64 = 1e-8;

/// Panel budget per quadrature.
pub const MAX_PANELS: usize = 1 << 20;

/// For `q < 1` the weight `u` must vanish on `[0, ZERO_MARGIN)`.
pub const ZERO_MARGIN: f64 = 1e-6;

fn quad_options() -> QuadOptions {
    QuadOptions {
        abs_tol: 0.0,
        rel_tol: RELATIVE_TOLERANCE,
        max_panels: MAX_PANELS,
    }
}

/// A quadrature value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
}

fn check_exponent(name: &str, q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive and finite, got {q}"
        )))
    }
}

fn check_weight(u: &StepFunction, q: f64) -> Result<()> {
    let (start, _) = u.support();
    if u.is_zero() {
        return Ok(());
    }
    if start < 0.0 {
        return Err(Error::NegativeSupport { start });
    }
    if q < 1.0 && start < ZERO_MARGIN {
        return Err(Error::InvalidArgument(format!(
            "for q < 1 the weight must vanish on [0, {ZERO_MARGIN}), but its support starts at {start}"
        )));
    }
    Ok(())
}

fn check_decreasing(f: &Function) -> Result<()> {
    f.require_half_line()?;
    f.require_nonzero()?;
    if !f.is_decreasing_on_half_line() {
        return Err(Error::NotDecreasing(
            "the weighted Fourier bound is only established for nonincreasing functions \
             on [0, inf)"
                .into(),
        ));
    }
    Ok(())
}

/// `int_0^z f`.
pub fn hardy_operator(f: &Function, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!("z must be positive, got {z}")));
    }
    f.require_half_line()?;
    Ok(f.integrate(0.0, z))
}

/// Knots of `f` on `(0, inf)` and the end of its support.
fn positive_knots(f: &Function) -> (Vec<f64>, f64) {
    let knots: Vec<f64> = f.knots().iter().copied().filter(|&x| x > 0.0).collect();
    let end = f.support().1;
    (knots, end)
}

/// `(int_0^inf (int_0^{1/z} f)^q u(z) dz)^{1/q}`, the substituted form of
/// the weighted Hardy quantity.
pub fn hardy_lhs(f: &Function, u: &StepFunction, q: f64) -> Result<Estimate> {
    check_exponent("q", q)?;
    check_decreasing(f)?;
    check_weight(u, q)?;
    let (knots, end) = positive_knots(f);
    let total = f.total_integral();
    let mut value = 0.0;
    let mut error = 0.0;
    for (a, b, w) in u.pieces() {
        if w == 0.0 {
            continue;
        }
        // int_0^{1/z} f is the full integral for z <= 1/end
        let saturation = 1.0 / end;
        let flat_hi = b.min(saturation);
        if flat_hi > a {
            value += w * total.powf(q) * (flat_hi - a);
        }
        let lo = a.max(saturation);
        if b <= lo {
            continue;
        }
        let mut edges = vec![lo];
        let mut inner: Vec<f64> = knots.iter().map(|&x| 1.0 / x).filter(|&z| z > lo && z < b).collect();
        inner.sort_by(f64::total_cmp);
        edges.extend(inner);
        edges.push(b);
        let r = quad::integrate(|z| f.integrate(0.0, 1.0 / z).powf(q), &edges, quad_options())?;
        value += w * r.value;
        error += w * r.error_estimate;
    }
    Ok(to_norm(value, error, q))
}

/// `(int_0^inf (int_0^z f)^q u(1/z) z^{-2} dz)^{1/q}`, the Hardy quantity in
/// its original variable. Equal to [`hardy_lhs`] by substitution.
pub fn hardy_lhs_unsubstituted(f: &Function, u: &StepFunction, q: f64) -> Result<Estimate> {
    check_exponent("q", q)?;
    check_decreasing(f)?;
    check_weight(u, q)?;
    let (knots, end) = positive_knots(f);
    let total = f.total_integral();
    let mut value = 0.0;
    let mut error = 0.0;
    for (a, b, w) in u.pieces() {
        if w == 0.0 {
            continue;
        }
        // u(1/z) = w for z in (1/b, 1/a]
        let lo = 1.0 / b;
        let hi = if a > 0.0 { 1.0 / a } else { f64::INFINITY };
        // beyond the support the inner integral is constant and
        // int z^{-2} dz = 1/lo - 1/hi
        let tail_lo = lo.max(end);
        if hi > tail_lo {
            let inv_hi = if hi.is_finite() { 1.0 / hi } else { 0.0 };
            value += w * total.powf(q) * (1.0 / tail_lo - inv_hi);
        }
        let body_hi = hi.min(end);
        if body_hi <= lo {
            continue;
        }
        let mut edges = vec![lo];
        edges.extend(knots.iter().copied().filter(|&x| x > lo && x < body_hi));
        edges.push(body_hi);
        let r = quad::integrate(
            |z| f.integrate(0.0, z).powf(q) / (z * z),
            &edges,
            quad_options(),
        )?;
        value += w * r.value;
        error += w * r.error_estimate;
    }
    Ok(to_norm(value, error, q))
}

fn to_norm(integral: f64, error: f64, q: f64) -> Estimate {
    let value = integral.powf(1.0 / q);
    // first-order propagation through t -> t^{1/q}
    let error_estimate = if integral > 0.0 {
        value * error / (q * integral)
    } else {
        0.0
    };
    Estimate {
        value,
        error_estimate,
    }
}

/// `(int_0^inf |f^(z)|^q u(z) dz)^{1/q}` with the closed-form transform as
/// integrand.
pub fn fourier_weighted_norm(f: &Function, u: &StepFunction, q: f64) -> Result<Estimate> {
    check_exponent("q", q)?;
    if !u.is_zero() && u.support().0 < 0.0 {
        return Err(Error::NegativeSupport { start: u.support().0 });
    }
    let (s0, s1) = f.support();
    let extent = s1.abs().max(s0.abs()).max(s1 - s0).max(1e-300);
    // |f^| varies on the scale 1/extent
    let max_width = PI / (4.0 * extent);
    let mut value = 0.0;
    let mut error = 0.0;
    for (a, b, w) in u.pieces() {
        if w == 0.0 {
            continue;
        }
        let edges = quad::refine_edges(&[a.max(0.0), b], max_width);
        let r = quad::integrate(|z| fourier(f, z).norm().powf(q), &edges, quad_options())?;
        value += w * r.value;
        error += w * r.error_estimate;
    }
    Ok(to_norm(value, error, q))
}

/// Both sides of the weighted Fourier inequality and the Hardy quantity
/// linking them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyReport {
    pub p: f64,
    pub q: f64,
    pub fourier_weighted_norm: f64,
    pub fourier_error_estimate: f64,
    pub hardy_middle: f64,
    pub hardy_error_estimate: f64,
    pub lambda_rhs: f64,
    pub chain_constant: f64,
    /// `chain_constant * hardy_middle`
    pub chain_bound: f64,
    /// `fourier_weighted_norm <= chain_bound * (1 + 1e-6)`
    pub chain_holds: bool,
    /// `hardy_middle / lambda_rhs`: a lower bound for any Hardy constant `C`
    pub hardy_ratio: f64,
    /// `chain_constant * hardy_ratio`: the Fourier constant implied by it
    pub implied_fourier_constant: f64,
}

/// Relative slack allowed in [`HardyReport::chain_holds`].
pub const CHAIN_SLACK: f64 = 1e-6;

pub fn check_corollary2(
    f: &Function,
    u: &StepFunction,
    v: &StepFunction,
    p: f64,
    q: f64,
) -> Result<HardyReport> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    check_decreasing(f)?;
    let middle = hardy_lhs(f, u, q)?;
    let fourier_side = fourier_weighted_norm(f, u, q)?;
    let lambda_rhs = lorentz_lambda_norm(f, v, p)?;
    let chain_constant = monotone_constant();
    let chain_bound = chain_constant * middle.value;
    let hardy_ratio = if lambda_rhs > 0.0 {
        middle.value / lambda_rhs
    } else {
        f64::INFINITY
    };
    Ok(HardyReport {
        p,
        q,
        fourier_weighted_norm: fourier_side.value,
        fourier_error_estimate: fourier_side.error_estimate,
        hardy_middle: middle.value,
        hardy_error_estimate: middle.error_estimate,
        lambda_rhs,
        chain_constant,
        chain_bound,
        chain_holds: fourier_side.value <= chain_bound * (1.0 + CHAIN_SLACK),
        hardy_ratio,
        implied_fourier_constant: chain_constant * hardy_ratio,
    })
}
