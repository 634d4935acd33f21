//! Exact piecewise representations.
//!
//! Two function classes are supported, both nonnegative with compact
//! support:
//!
//! * [`StepFunction`]: `f(x) = v_i` on `[x_{i-1}, x_i)`, zero elsewhere.
//!   Intervals are half-open, which only matters for pointwise evaluation
//!   at breakpoints; every measure-theoretic quantity is unaffected.
//! * [`PiecewiseLinearFunction`]: linear interpolation of `(t_j, y_j)` on
//!   `[t_0, t_m]`, zero elsewhere.
//!
//! [`Function`] is the tagged union used by everything downstream and by
//! the JSON format `{"type":"step",...}` / `{"type":"linear",...}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_finite(xs: &[f64], what: &str) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite {
            what: what.to_string(),
        })
    }
}

fn check_increasing(xs: &[f64]) -> Result<()> {
    for (i, w) in xs.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(Error::NonMonotone { index: i + 1 });
        }
    }
    Ok(())
}

fn check_nonnegative(vs: &[f64]) -> Result<()> {
    for (index, &value) in vs.iter().enumerate() {
        if value < 0.0 {
            return Err(Error::NegativeValue { index, value });
        }
    }
    Ok(())
}

/// Nonnegative, compactly supported, piecewise-constant function in
/// canonical form.
///
/// Canonical form: adjacent intervals never share a value, and leading or
/// trailing zero intervals are trimmed. The identically-zero function is
/// kept as a single zero-valued interval.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || breakpoints.len() != values.len() + 1 {
            return Err(Error::LengthMismatch {
                what: format!(
                    "{} breakpoints for {} values (need n+1 breakpoints for n >= 1 values)",
                    breakpoints.len(),
                    values.len()
                ),
            });
        }
        check_finite(&breakpoints, "breakpoints")?;
        check_finite(&values, "values")?;
        check_increasing(&breakpoints)?;
        check_nonnegative(&values)?;
        Ok(Self::canonical(breakpoints, values))
    }

    /// `height` times the indicator of `[a, b)`.
    pub fn boxcar(a: f64, b: f64, height: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![height])
    }

    /// The identically-zero function, stored as a zero interval on `[0, 1)`.
    pub fn zero() -> Self {
        Self {
            breakpoints: vec![0.0, 1.0],
            values: vec![0.0],
        }
    }

    fn canonical(breakpoints: Vec<f64>, values: Vec<f64>) -> Self {
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<f64> = Vec::with_capacity(values.len());
        bps.push(breakpoints[0]);
        for (i, &v) in values.iter().enumerate() {
            if vals.last() == Some(&v) {
                *bps.last_mut().unwrap() = breakpoints[i + 1];
            } else {
                vals.push(v);
                bps.push(breakpoints[i + 1]);
            }
        }
        if vals.len() > 1 || vals[0] != 0.0 {
            if vals[0] == 0.0 {
                vals.remove(0);
                bps.remove(0);
            }
            if *vals.last().unwrap() == 0.0 {
                vals.pop();
                bps.pop();
            }
        }
        Self {
            breakpoints: bps,
            values: vals,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of canonical pieces.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// `(left, right, value)` for each interval.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.breakpoints[i], self.breakpoints[i + 1], v))
    }

    /// Smallest closed interval containing the support.
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Measure of `{f > 0}`.
    pub fn support_measure(&self) -> f64 {
        self.pieces()
            .filter(|p| p.2 > 0.0)
            .map(|(a, b, _)| b - a)
            .sum()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let bps = &self.breakpoints;
        if !(x >= bps[0] && x < bps[bps.len() - 1]) {
            return 0.0;
        }
        // index of the last breakpoint <= x
        let i = bps.partition_point(|&b| b <= x) - 1;
        self.values[i]
    }

    /// `int_a^b f`. For `a > b` the result is `-int_b^a f`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        if a > b {
            return -self.integrate(b, a);
        }
        let mut total = 0.0;
        for (l, r, v) in self.pieces() {
            if r <= a {
                continue;
            }
            if l >= b {
                break;
            }
            let lo = l.max(a);
            let hi = r.min(b);
            total += v * (hi - lo);
        }
        total
    }

    pub fn total_integral(&self) -> f64 {
        self.pieces().map(|(a, b, v)| v * (b - a)).sum()
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be finite and nonnegative, got {c}"
            )));
        }
        Self::new(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * c).collect(),
        )
    }

    pub fn translate(&self, shift: f64) -> Result<Self> {
        Self::new(
            self.breakpoints.iter().map(|x| x + shift).collect(),
            self.values.clone(),
        )
    }

    /// The mirror image `x -> f(-x)` (equal to it off the breakpoints).
    pub fn reflect(&self) -> Self {
        let bps: Vec<f64> = self.breakpoints.iter().rev().map(|x| -x).collect();
        let vals: Vec<f64> = self.values.iter().rev().copied().collect();
        Self::canonical(bps, vals)
    }

    /// `f` times the indicator of `[a, b)`.
    pub fn restrict(&self, a: f64, b: f64) -> Self {
        let mut bps = Vec::new();
        let mut vals = Vec::new();
        for (l, r, v) in self.pieces() {
            let lo = l.max(a);
            let hi = r.min(b);
            if hi <= lo {
                continue;
            }
            if bps.last() != Some(&lo) {
                if !bps.is_empty() {
                    vals.push(0.0);
                }
                bps.push(lo);
            }
            vals.push(v);
            bps.push(hi);
        }
        if vals.is_empty() {
            return Self::zero();
        }
        Self::canonical(bps, vals)
    }

    /// True when `f` vanishes on the negative axis and is nonincreasing on
    /// `[0, inf)`.
    pub fn is_decreasing_on_half_line(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.breakpoints[0] == 0.0 && self.values.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Nonnegative, compactly supported, piecewise-linear function.
///
/// Endpoint values are normally zero, making `f` continuous on the whole
/// line. Nonzero endpoint values are accepted so that rearrangements and
/// crest pieces (which start with a jump) stay representable; the function
/// is then discontinuous at the ends of its support.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFunction {
    nodes: Vec<f64>,
    node_values: Vec<f64>,
}

impl PiecewiseLinearFunction {
    pub fn new(nodes: Vec<f64>, node_values: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != node_values.len() {
            return Err(Error::LengthMismatch {
                what: format!(
                    "{} nodes for {} node values (need equal counts, at least 2)",
                    nodes.len(),
                    node_values.len()
                ),
            });
        }
        check_finite(&nodes, "nodes")?;
        check_finite(&node_values, "node_values")?;
        check_increasing(&nodes)?;
        check_nonnegative(&node_values)?;
        Ok(Self { nodes, node_values })
    }

    /// Triangle with the given base and peak height at the midpoint.
    pub fn triangle(a: f64, b: f64, height: f64) -> Result<Self> {
        Self::new(vec![a, 0.5 * (a + b), b], vec![0.0, height, 0.0])
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node_values(&self) -> &[f64] {
        &self.node_values
    }

    /// `(t0, y0, t1, y1)` for each linear segment.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        (0..self.nodes.len() - 1).map(move |i| {
            (
                self.nodes[i],
                self.node_values[i],
                self.nodes[i + 1],
                self.node_values[i + 1],
            )
        })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.nodes[0], *self.nodes.last().unwrap())
    }

    pub fn is_zero(&self) -> bool {
        self.node_values.iter().all(|&v| v == 0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.node_values.iter().copied().fold(0.0, f64::max)
    }

    /// Interpolated value; `[t_0, t_m]` is treated as closed.
    pub fn evaluate(&self, x: f64) -> f64 {
        let n = self.nodes.len();
        if !(x >= self.nodes[0] && x <= self.nodes[n - 1]) {
            return 0.0;
        }
        let j = self.nodes.partition_point(|&t| t <= x);
        if j >= n {
            return self.node_values[n - 1];
        }
        let (t0, t1) = (self.nodes[j - 1], self.nodes[j]);
        let (y0, y1) = (self.node_values[j - 1], self.node_values[j]);
        y0 + (y1 - y0) * ((x - t0) / (t1 - t0))
    }

    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        if a > b {
            return -self.integrate(b, a);
        }
        let mut total = 0.0;
        for (t0, y0, t1, y1) in self.segments() {
            if t1 <= a {
                continue;
            }
            if t0 >= b {
                break;
            }
            if t0 >= a && t1 <= b {
                total += 0.5 * (t1 - t0) * (y0 + y1);
                continue;
            }
            let lo = t0.max(a);
            let hi = t1.min(b);
            let slope = (y1 - y0) / (t1 - t0);
            let ylo = y0 + slope * (lo - t0);
            let yhi = y0 + slope * (hi - t0);
            total += 0.5 * (hi - lo) * (ylo + yhi);
        }
        total
    }

    pub fn total_integral(&self) -> f64 {
        self.segments()
            .map(|(t0, y0, t1, y1)| 0.5 * (t1 - t0) * (y0 + y1))
            .sum()
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be finite and nonnegative, got {c}"
            )));
        }
        Self::new(
            self.nodes.clone(),
            self.node_values.iter().map(|v| v * c).collect(),
        )
    }

    pub fn translate(&self, shift: f64) -> Result<Self> {
        Self::new(
            self.nodes.iter().map(|x| x + shift).collect(),
            self.node_values.clone(),
        )
    }

    pub fn reflect(&self) -> Self {
        Self {
            nodes: self.nodes.iter().rev().map(|x| -x).collect(),
            node_values: self.node_values.iter().rev().copied().collect(),
        }
    }

    /// `f` restricted to `[a, b]`. Returns `None` when the overlap with the
    /// support has zero length.
    pub fn restrict(&self, a: f64, b: f64) -> Option<Self> {
        let (s0, s1) = self.support();
        let lo = a.max(s0);
        let hi = b.min(s1);
        if hi <= lo {
            return None;
        }
        let mut nodes = vec![lo];
        let mut vals = vec![self.evaluate(lo)];
        for (&t, &y) in self.nodes.iter().zip(&self.node_values) {
            if t > lo && t < hi {
                nodes.push(t);
                vals.push(y);
            }
        }
        nodes.push(hi);
        vals.push(self.evaluate(hi));
        Some(Self {
            nodes,
            node_values: vals,
        })
    }

    pub fn is_decreasing_on_half_line(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.nodes[0] == 0.0 && self.node_values.windows(2).all(|w| w[1] <= w[0])
    }
}

/// A step or piecewise-linear function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionRepr", into = "FunctionRepr")]
pub enum Function {
    Step(StepFunction),
    Linear(PiecewiseLinearFunction),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum FunctionRepr {
    Step {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Linear {
        nodes: Vec<f64>,
        node_values: Vec<f64>,
    },
}

impl TryFrom<FunctionRepr> for Function {
    type Error = Error;

    fn try_from(r: FunctionRepr) -> Result<Self> {
        match r {
            FunctionRepr::Step {
                breakpoints,
                values,
            } => StepFunction::new(breakpoints, values).map(Function::Step),
            FunctionRepr::Linear { nodes, node_values } => {
                PiecewiseLinearFunction::new(nodes, node_values).map(Function::Linear)
            }
        }
    }
}

impl From<Function> for FunctionRepr {
    fn from(f: Function) -> Self {
        match f {
            Function::Step(s) => FunctionRepr::Step {
                breakpoints: s.breakpoints,
                values: s.values,
            },
            Function::Linear(l) => FunctionRepr::Linear {
                nodes: l.nodes,
                node_values: l.node_values,
            },
        }
    }
}

impl From<StepFunction> for Function {
    fn from(s: StepFunction) -> Self {
        Function::Step(s)
    }
}

impl From<PiecewiseLinearFunction> for Function {
    fn from(l: PiecewiseLinearFunction) -> Self {
        Function::Linear(l)
    }
}

impl Function {
    pub fn evaluate(&self, x: f64) -> f64 {
        match self {
            Function::Step(s) => s.evaluate(x),
            Function::Linear(l) => l.evaluate(x),
        }
    }

    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        match self {
            Function::Step(s) => s.integrate(a, b),
            Function::Linear(l) => l.integrate(a, b),
        }
    }

    pub fn total_integral(&self) -> f64 {
        match self {
            Function::Step(s) => s.total_integral(),
            Function::Linear(l) => l.total_integral(),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            Function::Step(s) => s.support(),
            Function::Linear(l) => l.support(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Function::Step(s) => s.is_zero(),
            Function::Linear(l) => l.is_zero(),
        }
    }

    pub fn max_value(&self) -> f64 {
        match self {
            Function::Step(s) => s.max_value(),
            Function::Linear(l) => l.max_value(),
        }
    }

    /// Abscissae where `f` or its derivative may jump.
    pub fn knots(&self) -> &[f64] {
        match self {
            Function::Step(s) => s.breakpoints(),
            Function::Linear(l) => l.nodes(),
        }
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        Ok(match self {
            Function::Step(s) => Function::Step(s.scale(c)?),
            Function::Linear(l) => Function::Linear(l.scale(c)?),
        })
    }

    pub fn translate(&self, shift: f64) -> Result<Self> {
        Ok(match self {
            Function::Step(s) => Function::Step(s.translate(shift)?),
            Function::Linear(l) => Function::Linear(l.translate(shift)?),
        })
    }

    pub fn reflect(&self) -> Self {
        match self {
            Function::Step(s) => Function::Step(s.reflect()),
            Function::Linear(l) => Function::Linear(l.reflect()),
        }
    }

    pub fn is_decreasing_on_half_line(&self) -> bool {
        match self {
            Function::Step(s) => s.is_decreasing_on_half_line(),
            Function::Linear(l) => l.is_decreasing_on_half_line(),
        }
    }

    pub fn as_step(&self) -> Option<&StepFunction> {
        match self {
            Function::Step(s) => Some(s),
            Function::Linear(_) => None,
        }
    }

    pub fn as_linear(&self) -> Option<&PiecewiseLinearFunction> {
        match self {
            Function::Linear(l) => Some(l),
            Function::Step(_) => None,
        }
    }

    /// Rejects functions with support on the negative axis.
    pub(crate) fn require_half_line(&self) -> Result<()> {
        let (start, _) = self.support();
        if start < 0.0 && !self.is_zero() {
            return Err(Error::NegativeSupport { start });
        }
        Ok(())
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroFunction)
        } else {
            Ok(())
        }
    }
}

/// How sampled data is turned into a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    /// Each sample holds until the next abscissa; the last sample's box is
    /// as wide as the preceding gap.
    LeftStep,
    /// Linear interpolation; a zero node is appended at each end with a nonzero
    /// sample, one median spacing away.
    Linear,
}

/// Builds a function whose values at `xs` are exactly `ys`.
pub fn from_samples(xs: &[f64], ys: &[f64], mode: SampleMode) -> Result<Function> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            what: format!("{} abscissae for {} samples", xs.len(), ys.len()),
        });
    }
    if xs.len() < 2 {
        return Err(Error::LengthMismatch {
            what: format!("need at least 2 samples, got {}", xs.len()),
        });
    }
    check_finite(xs, "sample abscissae")?;
    check_finite(ys, "sample values")?;
    check_increasing(xs)?;
    check_nonnegative(ys)?;
    let n = xs.len();
    match mode {
        SampleMode::LeftStep => {
            let mut bps = xs.to_vec();
            bps.push(xs[n - 1] + (xs[n - 1] - xs[n - 2]));
            StepFunction::new(bps, ys.to_vec()).map(Function::Step)
        }
        SampleMode::Linear => {
            let mut gaps: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
            gaps.sort_by(f64::total_cmp);
            let m = gaps.len();
            let median = if m % 2 == 1 {
                gaps[m / 2]
            } else {
                0.5 * (gaps[m / 2 - 1] + gaps[m / 2])
            };
            let mut nodes = Vec::with_capacity(n + 2);
            let mut vals = Vec::with_capacity(n + 2);
            if ys[0] != 0.0 {
                nodes.push(xs[0] - median);
                vals.push(0.0);
            }
            nodes.extend_from_slice(xs);
            vals.extend_from_slice(ys);
            if ys[n - 1] != 0.0 {
                nodes.push(xs[n - 1] + median);
                vals.push(0.0);
            }
            PiecewiseLinearFunction::new(nodes, vals).map(Function::Linear)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_boxes() -> StepFunction {
        StepFunction::new(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 0.0, 1.0]).unwrap()
    }

    fn triangle_g() -> PiecewiseLinearFunction {
        PiecewiseLinearFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn make_step_two_boxes() {
        let f = two_boxes();
        assert_eq!(f.breakpoints(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(f.values(), &[1.0, 0.0, 1.0]);
        assert_eq!(f.support_measure(), 2.0);
    }

    #[test]
    fn make_step_merges_equal_neighbours() {
        let f = StepFunction::new(vec![0.0, 1.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(f.breakpoints(), &[0.0, 2.0]);
        assert_eq!(f.values(), &[1.0]);
    }

    #[test]
    fn make_step_trims_zero_ends() {
        let f = StepFunction::new(vec![-1.0, 0.0, 1.0, 4.0], vec![0.0, 2.0, 0.0]).unwrap();
        assert_eq!(f.breakpoints(), &[0.0, 1.0]);
        assert_eq!(f.values(), &[2.0]);
        let z = StepFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn make_step_validation_errors_are_distinct() {
        assert!(matches!(
            StepFunction::new(vec![0.0, 2.0], vec![-1.0]),
            Err(Error::NegativeValue { index: 0, .. })
        ));
        assert!(matches!(
            StepFunction::new(vec![0.0, 2.0, 1.0], vec![1.0, 1.0]),
            Err(Error::NonMonotone { index: 2 })
        ));
        assert!(matches!(
            StepFunction::new(vec![0.0, 1.0], vec![1.0, 1.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            StepFunction::new(vec![0.0, f64::NAN], vec![1.0]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn evaluate_half_open() {
        let f = StepFunction::boxcar(0.0, 1.0, 1.0).unwrap();
        assert_eq!(f.evaluate(0.5), 1.0);
        assert_eq!(f.evaluate(0.0), 1.0);
        assert_eq!(f.evaluate(1.0), 0.0);
        assert_eq!(f.evaluate(-0.1), 0.0);
        assert_eq!(triangle_g().evaluate(1.0), 1.0);
        assert_eq!(triangle_g().evaluate(0.25), 0.25);
        assert_eq!(triangle_g().evaluate(1.5), 0.5);
        assert_eq!(triangle_g().evaluate(2.5), 0.0);
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(two_boxes().integrate(-10.0, 10.0), 2.0);
        assert_eq!(two_boxes().integrate(10.0, -10.0), -2.0);
        assert_eq!(two_boxes().integrate(0.5, 2.25), 0.75);
        assert_eq!(triangle_g().integrate(0.0, 2.0), 1.0);
        assert_eq!(triangle_g().integrate(0.0, 1.0), 0.5);
        assert_eq!(triangle_g().integrate(0.5, 1.5), 0.75);
    }

    #[test]
    fn triangle_area_matches_midpoint_rule() {
        let g = triangle_g();
        let h = 1e-4;
        let n = (2.0 / h) as usize;
        let midpoint: f64 = (0..n).map(|i| g.evaluate((i as f64 + 0.5) * h) * h).sum();
        assert!((midpoint - g.integrate(0.0, 2.0)).abs() < 1e-8);
    }

    #[test]
    fn restrict_and_reflect() {
        let f = two_boxes();
        let left = f.restrict(f64::NEG_INFINITY, 1.5);
        assert_eq!(left.breakpoints(), &[0.0, 1.0]);
        let mid = f.restrict(0.5, 2.5);
        assert_eq!(mid.breakpoints(), &[0.5, 1.0, 2.0, 2.5]);
        assert_eq!(mid.values(), &[1.0, 0.0, 1.0]);
        let r = f.reflect();
        assert_eq!(r.breakpoints(), &[-3.0, -2.0, -1.0, 0.0]);
        let g = triangle_g().restrict(0.5, 1.0).unwrap();
        assert_eq!(g.nodes(), &[0.5, 1.0]);
        assert_eq!(g.node_values(), &[0.5, 1.0]);
    }

    #[test]
    fn samples_left_step() {
        let f = from_samples(&[0.0, 1.0, 2.0], &[1.0, 0.0, 1.0], SampleMode::LeftStep).unwrap();
        let s = f.as_step().unwrap();
        assert_eq!(s.breakpoints(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(s.values(), &[1.0, 0.0, 1.0]);

        let f = from_samples(&[0.0, 1.0], &[3.0, 3.0], SampleMode::LeftStep).unwrap();
        let s = f.as_step().unwrap();
        assert_eq!(s.breakpoints(), &[0.0, 2.0]);
        assert_eq!(s.values(), &[3.0]);
        assert_eq!(f.evaluate(0.0), 3.0);
        assert_eq!(f.evaluate(1.0), 3.0);
    }

    #[test]
    fn samples_linear() {
        let f = from_samples(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0], SampleMode::Linear).unwrap();
        assert_eq!(f, Function::Linear(triangle_g()));

        let f = from_samples(&[0.0, 1.0, 3.0], &[2.0, 1.0, 1.0], SampleMode::Linear).unwrap();
        let l = f.as_linear().unwrap();
        assert_eq!(l.nodes(), &[-1.5, 0.0, 1.0, 3.0, 4.5]);
        for (x, y) in [(0.0, 2.0), (1.0, 1.0), (3.0, 1.0)] {
            assert_eq!(f.evaluate(x), y);
        }
        assert!(from_samples(&[0.0, 0.0], &[1.0, 1.0], SampleMode::Linear).is_err());
        assert!(from_samples(&[0.0, 1.0], &[1.0, -1.0], SampleMode::Linear).is_err());
    }

    #[test]
    fn json_format() {
        let f: Function =
            serde_json::from_str(r#"{"type":"step","breakpoints":[0,1,2],"values":[1,1]}"#)
                .unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"type":"step","breakpoints":[0.0,2.0],"values":[1.0]}"#);
        let g: Function =
            serde_json::from_str(r#"{"type":"linear","nodes":[0,1,2],"node_values":[0,1,0]}"#)
                .unwrap();
        assert_eq!(g, Function::Linear(triangle_g()));
        let err = serde_json::from_str::<Function>(r#"{"type":"step","breakpoints":[0,1]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("values"), "{err}");
        assert!(serde_json::from_str::<Function>(
            r#"{"type":"step","breakpoints":[0,1],"values":[-2]}"#
        )
        .is_err());
    }
}
