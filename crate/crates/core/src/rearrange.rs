//! Decreasing rearrangement, distribution function and weighted Lorentz
//! norms.

use crate::error::{Error, Result};
use crate::piecewise::{Function, PiecewiseLinearFunction, StepFunction};

/// The decreasing rearrangement `f*` of a function: nonincreasing on
/// `[0, inf)`, zero on the negative axis, and equimeasurable with `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rearrangement {
    star: Function,
}

impl Rearrangement {
    pub fn star(&self) -> &Function {
        &self.star
    }

    pub fn into_star(self) -> Function {
        self.star
    }

    /// `int_0^t f*`.
    pub fn integral(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "upper limit must be positive, got {t}"
            )));
        }
        Ok(self.star.integrate(0.0, t))
    }
}

/// Measure of `{x : f(x) > alpha}`.
pub fn distribution(f: &Function, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "level must be positive, got {alpha}"
        )));
    }
    Ok(match f {
        Function::Step(s) => s
            .pieces()
            .filter(|p| p.2 > alpha)
            .map(|(a, b, _)| b - a)
            .sum(),
        Function::Linear(l) => linear_measure_above(l, alpha, false),
    })
}

/// `|{f > level}|` (or `|{f >= level}|` when `inclusive`) for a
/// piecewise-linear function, exact per segment.
fn linear_measure_above(l: &PiecewiseLinearFunction, level: f64, inclusive: bool) -> f64 {
    let mut total = 0.0;
    for (t0, y0, t1, y1) in l.segments() {
        let w = t1 - t0;
        if y0 == y1 {
            if y0 > level || (inclusive && y0 == level) {
                total += w;
            }
            continue;
        }
        let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
        let frac = ((hi - level) / (hi - lo)).clamp(0.0, 1.0);
        total += w * frac;
    }
    total
}

pub fn rearrangement(f: &Function) -> Rearrangement {
    let star = match f {
        Function::Step(s) => Function::Step(rearrange_step(s)),
        Function::Linear(l) => rearrange_linear(l),
    };
    Rearrangement { star }
}

fn rearrange_step(s: &StepFunction) -> StepFunction {
    if s.is_zero() {
        return StepFunction::zero();
    }
    let mut pairs: Vec<(f64, f64)> = s
        .pieces()
        .filter(|p| p.2 > 0.0)
        .map(|(a, b, v)| (v, b - a))
        .collect();
    // stable: ties keep their left-to-right order
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut bps = Vec::with_capacity(pairs.len() + 1);
    let mut x = 0.0;
    bps.push(x);
    for &(_, w) in &pairs {
        x += w;
        bps.push(x);
    }
    StepFunction::new(bps, pairs.into_iter().map(|p| p.0).collect())
        .expect("sorted positive widths give a valid step function")
}

fn rearrange_linear(l: &PiecewiseLinearFunction) -> Function {
    if l.is_zero() {
        return Function::Step(StepFunction::zero());
    }
    let mut levels: Vec<f64> = l.node_values().to_vec();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();
    // Between consecutive node values the distribution function is affine in
    // the level, so f* is linear in x there; a flat run at level L makes f*
    // constant on [|{f > L}|, |{f >= L}|].
    let mut nodes: Vec<f64> = Vec::new();
    let mut vals: Vec<f64> = Vec::new();
    let mut push = |x: f64, y: f64| {
        if let Some(&last) = nodes.last() {
            if x <= last {
                return;
            }
        }
        nodes.push(x);
        vals.push(y);
    };
    for &level in &levels {
        push(linear_measure_above(l, level, false), level);
        if level > 0.0 {
            push(linear_measure_above(l, level, true), level);
        }
    }
    if nodes.len() == 1 {
        // every positive value sits on one flat plateau ending in jumps
        let w = linear_measure_above(l, 0.0, false);
        return Function::Step(StepFunction::new(vec![0.0, w], vec![vals[0]]).unwrap());
    }
    Function::Linear(
        PiecewiseLinearFunction::new(nodes, vals)
            .expect("distribution inversion yields increasing abscissae"),
    )
}

/// `int_0^t f*` for `t > 0`.
pub fn rearrangement_integral(f: &Function, t: f64) -> Result<f64> {
    rearrangement(f).integral(t)
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "exponent must be positive and finite, got {p}"
        )));
    }
    Ok(())
}

/// `int f^p v` over the whole line, exact for step `f` and closed-form per
/// segment for piecewise-linear `f`.
pub fn power_weighted_integral(f: &Function, v: &StepFunction, p: f64) -> f64 {
    let mut total = 0.0;
    for (va, vb, w) in v.pieces() {
        if w == 0.0 {
            continue;
        }
        match f {
            Function::Step(s) => {
                for (a, b, y) in s.pieces() {
                    let lo = a.max(va);
                    let hi = b.min(vb);
                    if hi > lo && y > 0.0 {
                        total += w * y.powf(p) * (hi - lo);
                    }
                }
            }
            Function::Linear(l) => {
                for (t0, y0, t1, y1) in l.segments() {
                    let lo = t0.max(va);
                    let hi = t1.min(vb);
                    if hi <= lo {
                        continue;
                    }
                    let slope = (y1 - y0) / (t1 - t0);
                    let ya = y0 + slope * (lo - t0);
                    let yb = y0 + slope * (hi - t0);
                    total += w * linear_power_integral(hi - lo, ya, yb, p);
                }
            }
        }
    }
    total
}

/// `int_0^w y(x)^p dx` where `y` runs linearly from `ya` to `yb`.
fn linear_power_integral(w: f64, ya: f64, yb: f64, p: f64) -> f64 {
    let ya = ya.max(0.0);
    let yb = yb.max(0.0);
    let m = 0.5 * (ya + yb);
    if m == 0.0 {
        return 0.0;
    }
    let d = yb - ya;
    let r = d / m;
    if r.abs() <= 1e-3 {
        // expansion of ((m + d/2)^{p+1} - (m - d/2)^{p+1}) / ((p+1) d) about d = 0
        let r2 = r * r;
        let c2 = p * (p - 1.0) / 24.0;
        let c4 = p * (p - 1.0) * (p - 2.0) * (p - 3.0) / 1920.0;
        return w * m.powf(p) * (1.0 + c2 * r2 + c4 * r2 * r2);
    }
    w * (yb.powf(p + 1.0) - ya.powf(p + 1.0)) / ((p + 1.0) * d)
}

/// `(int_0^inf (f*)^p v)^{1/p}`.
pub fn lorentz_lambda_norm(f: &Function, v: &StepFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let r = rearrangement(f);
    Ok(power_weighted_integral(r.star(), v, p).powf(1.0 / p))
}

/// `(int f^p v)^{1/p}`, the plain weighted Lebesgue norm.
pub fn weighted_lp_norm(f: &Function, v: &StepFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(power_weighted_integral(f, v, p).powf(1.0 / p))
}
