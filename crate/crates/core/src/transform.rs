//! Closed-form Fourier, sine and cosine transforms with the convention
//! `f^(z) = int f(x) e^{-ixz} dx`, plus an independent quadrature oracle.
//!
//! Each piece is expanded about its midpoint `m` with half-width `h`:
//!
//! * constant `c`: `e^{-imz} * c * 2h * sinc(hz)`
//! * linear `y_m + s(x - m)`: the constant part as above, plus
//!   `-2i * s * e^{-imz} * (sin(hz) - hz cos(hz)) / z^2`
//!
//! Both brackets are evaluated by short Taylor series when `hz` is small,
//! which keeps full relative accuracy down to `z = 0` and makes
//! `f^(-z) = conj(f^(z))` hold bit for bit.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::piecewise::Function;
use crate::quad::{self, QuadOptions};

pub type ComplexValue = Complex64;

/// Below this value of `|z| * width` the sinc factor uses its series.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// `sin(t) / t`.
fn sinc(t: f64) -> f64 {
    if (2.0 * t).abs() < SERIES_THRESHOLD {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// `(sin(hz) - hz cos(hz)) / z^2`, odd in `z`.
fn odd_moment(h: f64, z: f64) -> f64 {
    let t = h * z;
    if t.abs() < 1e-2 {
        let t2 = t * t;
        h * h * h * z / 3.0 * (1.0 - t2 / 10.0 + t2 * t2 / 280.0)
    } else {
        (t.sin() - t * t.cos()) / (z * z)
    }
}

fn phase(m: f64, z: f64) -> Complex64 {
    let a = m * z;
    Complex64::new(a.cos(), -a.sin())
}

/// Exact transform of a step or piecewise-linear function.
pub fn fourier(f: &Function, z: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    match f {
        Function::Step(s) => {
            for (a, b, c) in s.pieces() {
                if c == 0.0 {
                    continue;
                }
                let h = 0.5 * (b - a);
                let m = 0.5 * (a + b);
                acc += phase(m, z) * (c * 2.0 * h * sinc(h * z));
            }
        }
        Function::Linear(l) => {
            for (t0, y0, t1, y1) in l.segments() {
                if y0 == 0.0 && y1 == 0.0 {
                    continue;
                }
                let h = 0.5 * (t1 - t0);
                let m = 0.5 * (t0 + t1);
                let ym = 0.5 * (y0 + y1);
                let slope = (y1 - y0) / (t1 - t0);
                let bracket = Complex64::new(ym * 2.0 * h * sinc(h * z), -2.0 * slope * odd_moment(h, z));
                acc += phase(m, z) * bracket;
            }
        }
    }
    acc
}

fn check_half_line(f: &Function, z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "frequency must be positive and finite, got {z}"
        )));
    }
    f.require_half_line()
}

/// `Sf(z) = int_0^inf f(x) sin(xz) dx` for `f` vanishing on the negative axis.
///
/// Step functions are summed by parts over their jumps,
/// `Sf(z) = (2/z) * sum_k drop_k * sin^2(x_k z / 2)`, where `drop_k` is the
/// decrease of `f` across breakpoint `x_k`. For nonincreasing `f` every term
/// is nonnegative, so the sign is exact.
pub fn sine_transform(f: &Function, z: f64) -> Result<f64> {
    check_half_line(f, z)?;
    Ok(match f {
        Function::Step(s) => {
            let bps = s.breakpoints();
            let vals = s.values();
            let mut total = 0.0;
            for (k, &x) in bps.iter().enumerate() {
                let left = if k == 0 { 0.0 } else { vals[k - 1] };
                let right = vals.get(k).copied().unwrap_or(0.0);
                let sn = (0.5 * x * z).sin();
                total += (left - right) * sn * sn;
            }
            2.0 * total / z
        }
        Function::Linear(_) => -fourier(f, z).im,
    })
}

/// `Cf(z) = int_0^inf f(x) cos(xz) dx` for `f` vanishing on the negative axis.
pub fn cosine_transform(f: &Function, z: f64) -> Result<f64> {
    check_half_line(f, z)?;
    Ok(fourier(f, z).re)
}

/// Adaptive quadrature of `int f(x) e^{-ixz} dx` over the support, with
/// estimated absolute error at most `tol`.
///
/// Independent of the closed forms: it only evaluates `f` pointwise. Panels
/// start at the function's knots and are no wider than `pi / (4|z|)`.
pub fn fourier_quadrature_oracle(f: &Function, z: f64, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let knots = f.knots();
    let max_width = if z == 0.0 { f64::INFINITY } else { PI / (4.0 * z.abs()) };
    let edges = quad::refine_edges(knots, max_width);
    // evaluate strictly inside each panel so that the half-open convention
    // at the knots never matters
    let r = quad::integrate(
        |x| {
            let v = f.evaluate(x);
            Complex64::new(v * (x * z).cos(), -v * (x * z).sin())
        },
        &edges,
        QuadOptions {
            abs_tol: tol,
            rel_tol: 0.0,
            max_panels: 1 << 22,
        },
    )?;
    Ok(r.value)
}
