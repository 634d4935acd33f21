//! Pointwise transform bounds in terms of crest counts, the ratio `Q(z)`,
//! and certificates built from its contrapositive.
//!
//! For nonnegative `f` with `N` crests and every `z > 0`,
//!
//! ```text
//! |f^(z)| <= N * pi * sqrt(10) * int_0^{1/z} f*
//! ```
//!
//! so `Q(z) = |f^(z)| / (pi sqrt(10) int_0^{1/z} f*) > N` at any `z` proves
//! the function has more than `N` crests.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::crests::{count_crests, decompose};
use crate::error::{Error, Result};
use crate::piecewise::{Function, StepFunction};
use crate::rearrange::{rearrangement, Rearrangement};
use crate::transform::{cosine_transform, fourier, sine_transform};

/// Guard for the strict comparison `Q > N`.
pub const THRESHOLD_GUARD: f64 = 1e-9;

/// `pi * sqrt(10)`, the per-crest constant.
pub fn crest_constant() -> f64 {
    PI * 10f64.sqrt()
}

/// `(pi / 2) * sqrt(10)`, the constant for a single monotone or unimodal
/// function.
pub fn monotone_constant() -> f64 {
    0.5 * crest_constant()
}

fn check_frequency(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "z must be positive and finite, got {z}"
        )))
    }
}

/// One evaluation of the crest bound at a frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QReport {
    pub z: f64,
    pub transform_magnitude: f64,
    pub tail_integral: f64,
    pub theorem1_bound: f64,
    pub q_value: f64,
    pub crest_count: usize,
}

/// Per-function data reused across a grid of frequencies.
#[derive(Debug, Clone)]
pub struct QContext {
    f: Function,
    rearranged: Rearrangement,
    crest_count: usize,
}

impl QContext {
    pub fn new(f: &Function) -> Result<Self> {
        let crest_count = count_crests(f)?;
        Ok(Self {
            f: f.clone(),
            rearranged: rearrangement(f),
            crest_count,
        })
    }

    pub fn function(&self) -> &Function {
        &self.f
    }

    pub fn crest_count(&self) -> usize {
        self.crest_count
    }

    pub fn rearrangement(&self) -> &Rearrangement {
        &self.rearranged
    }

    pub fn report(&self, z: f64) -> Result<QReport> {
        check_frequency(z)?;
        let transform_magnitude = fourier(&self.f, z).norm();
        let tail_integral = self.rearranged.integral(1.0 / z)?;
        let scale = crest_constant() * tail_integral;
        Ok(QReport {
            z,
            transform_magnitude,
            tail_integral,
            theorem1_bound: self.crest_count as f64 * scale,
            q_value: transform_magnitude / scale,
            crest_count: self.crest_count,
        })
    }
}

pub fn theorem1_bound(f: &Function, z: f64) -> Result<QReport> {
    check_frequency(z)?;
    QContext::new(f)?.report(z)
}

/// Two sides of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl LemmaCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }

    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

fn require_decreasing(f: &Function) -> Result<()> {
    f.require_half_line()?;
    if !f.is_decreasing_on_half_line() {
        return Err(Error::NotDecreasing(
            "values must not increase and the support must start at 0".into(),
        ));
    }
    Ok(())
}

/// `|f^(z)|` against `(pi/2) sqrt(10) int_0^{1/z} f` for nonincreasing `f`
/// on `[0, inf)`.
pub fn lemma_decreasing_check(f: &Function, z: f64) -> Result<LemmaCheck> {
    check_frequency(z)?;
    require_decreasing(f)?;
    Ok(LemmaCheck {
        z,
        lhs: fourier(f, z).norm(),
        rhs: monotone_constant() * f.integrate(0.0, 1.0 / z),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OnePeakCheck {
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub crest: f64,
}

impl OnePeakCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }
}

/// `|f^(z)|` against `(pi/2) sqrt(10) int_{b-1/z}^{b+1/z} f` for a function
/// cresting once at `b` (its leftmost maximizer).
pub fn lemma_onepeak_check(f: &Function, z: f64) -> Result<OnePeakCheck> {
    check_frequency(z)?;
    let report = decompose(f)?;
    if report.count != 1 {
        return Err(Error::NotOneCrest {
            count: report.count,
        });
    }
    let b = report.crest_locations[0];
    Ok(OnePeakCheck {
        z,
        lhs: fourier(f, z).norm(),
        rhs: monotone_constant() * f.integrate(b - 1.0 / z, b + 1.0 / z),
        crest: b,
    })
}

/// Sine and cosine transforms of a nonincreasing function next to the
/// windowed integrals they are compared with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockBounds {
    pub z: f64,
    pub sine: f64,
    pub cosine: f64,
    /// `int_0^{pi/(2z)} f`
    pub sine_window: f64,
    /// `int_0^{pi/z} f`, the window the alternating-series argument gives
    pub sine_window_full: f64,
    /// `int_0^{3pi/(2z)} f`
    pub cosine_window: f64,
}

impl BlockBounds {
    pub fn sine_positive(&self) -> bool {
        self.sine > 0.0
    }

    pub fn sine_within_half_window(&self, slack: f64) -> bool {
        self.sine <= self.sine_window + slack
    }

    pub fn sine_within_full_window(&self, slack: f64) -> bool {
        self.sine <= self.sine_window_full + slack
    }

    pub fn cosine_within_window(&self, slack: f64) -> bool {
        self.cosine.abs() <= self.cosine_window + slack
    }
}

pub fn block_bounds_check(f: &Function, z: f64) -> Result<BlockBounds> {
    check_frequency(z)?;
    require_decreasing(f)?;
    Ok(BlockBounds {
        z,
        sine: sine_transform(f, z)?,
        cosine: cosine_transform(f, z)?,
        sine_window: f.integrate(0.0, PI / (2.0 * z)),
        sine_window_full: f.integrate(0.0, PI / z),
        cosine_window: f.integrate(0.0, 3.0 * PI / (2.0 * z)),
    })
}

/// `5n` unit boxes at the even offsets `0, 2, ..., 2(5n - 1)`.
pub fn comb_example(n: u32) -> Result<StepFunction> {
    if n < 1 {
        return Err(Error::InvalidArgument("comb size must be at least 1".into()));
    }
    let boxes = 5 * n as usize;
    let bps: Vec<f64> = (0..2 * boxes).map(|k| k as f64).collect();
    let vals: Vec<f64> = (0..2 * boxes - 1)
        .map(|k| if k % 2 == 0 { 1.0 } else { 0.0 })
        .collect();
    StepFunction::new(bps, vals)
}

/// Returns `n` when `f` is exactly `comb_example(n)`.
pub fn detect_comb(f: &Function) -> Option<u32> {
    let s = f.as_step()?;
    let pieces = s.len();
    if pieces % 10 != 9 {
        return None;
    }
    let n = (pieces / 10 + 1) as u32;
    (comb_example(n).ok()? == *s).then_some(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScale {
    Log,
    Linear,
}

/// `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: GridScale,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize, scale: GridScale) -> Result<Self> {
        if !(min > 0.0) || !min.is_finite() || !max.is_finite() || max < min {
            return Err(Error::InvalidArgument(format!(
                "grid needs 0 < min <= max, got min={min} max={max}"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidArgument("grid count must be at least 1".into()));
        }
        Ok(Self {
            min,
            max,
            count,
            scale,
        })
    }

    /// Parses `min:max:count:log|lin`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "grid must look like min:max:count:log|lin, got {s:?}"
            )));
        }
        let num = |p: &str, name: &str| -> Result<f64> {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("grid {name} {p:?} is not a number")))
        };
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("grid count {:?} is not an integer", parts[2])))?;
        let scale = match parts[3].trim() {
            "log" => GridScale::Log,
            "lin" | "linear" => GridScale::Linear,
            other => return Err(Error::Parse(format!("grid scale must be log or lin, got {other:?}"))),
        };
        Self::new(num(parts[0], "min")?, num(parts[1], "max")?, count, scale)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.max;
                }
                let t = i as f64 / n;
                match self.scale {
                    GridScale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                    GridScale::Linear => self.min + t * (self.max - self.min),
                }
            })
            .collect()
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            min: 1e-2,
            max: 1e3,
            count: 512,
            scale: GridScale::Log,
        }
    }
}

/// `(2l + 1) pi` for every `l >= 0` with the product at most `max`.
pub fn odd_multiples_of_pi(max: f64) -> Vec<f64> {
    (0u64..)
        .map(|l| (2 * l + 1) as f64 * PI)
        .take_while(|&z| z <= max)
        .collect()
}

/// Sorted, deduplicated union of the grid's points, `extra`, and (when
/// `with_resonances`) the odd multiples of pi up to the grid's maximum.
pub fn build_grid(spec: &GridSpec, extra: &[f64], with_resonances: bool) -> Vec<f64> {
    let mut zs = spec.points();
    zs.extend_from_slice(extra);
    if with_resonances {
        zs.extend(odd_multiples_of_pi(spec.max));
    }
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    zs
}

/// 512 log-spaced points on `[1e-2, 1e3]` plus the odd multiples of pi up
/// to `1e3`.
pub fn default_grid() -> Vec<f64> {
    build_grid(&GridSpec::default(), &[], true)
}

/// Outcome of a `Q` sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub best_z: f64,
    pub best_q: f64,
    /// Certified lower bound on the crest count (at least 1).
    pub crest_lower_bound: u64,
    /// `2M - 1` roots of `f'` where `M` is the largest integer below
    /// `best_q`; zero when `M = 0`.
    pub root_lower_bound: u64,
    /// `2M + 1`, obtained by chaining `#crests >= M + 1` through the maxima
    /// count; reported beside the stated bound, never in place of it.
    pub derived_root_bound: u64,
    /// Whether `best_q` exceeds 1, i.e. the certificate says anything beyond
    /// "at least one crest".
    pub nontrivial: bool,
    pub grid: Vec<QReport>,
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for &z in grid {
        check_frequency(z)?;
    }
    Ok(())
}

fn evaluate_grid(ctx: &QContext, grid: &[f64]) -> Result<Vec<QReport>> {
    grid.par_iter().map(|&z| ctx.report(z)).collect()
}

fn best_index(reports: &[QReport]) -> usize {
    let mut best = 0;
    for (i, r) in reports.iter().enumerate() {
        if r.q_value > reports[best].q_value {
            best = i;
        }
    }
    best
}

/// Largest integer `M` with `q > M + guard`, or 0.
fn exceeded_integer(q: f64) -> u64 {
    let m = (q - THRESHOLD_GUARD).floor();
    if m > 0.0 {
        m as u64
    } else {
        0
    }
}

impl BoundCertificate {
    /// Aggregates already evaluated reports (maximum `Q`, leftmost on ties).
    pub fn from_reports(reports: Vec<QReport>) -> Result<Self> {
        if reports.is_empty() {
            return Err(Error::EmptyGrid);
        }
        Ok(certificate(reports))
    }
}

fn certificate(reports: Vec<QReport>) -> BoundCertificate {
    let i = best_index(&reports);
    let best = reports[i];
    let m = exceeded_integer(best.q_value);
    BoundCertificate {
        best_z: best.z,
        best_q: best.q_value,
        crest_lower_bound: m + 1,
        root_lower_bound: if m >= 1 { 2 * m - 1 } else { 0 },
        derived_root_bound: if m >= 1 { 2 * m + 1 } else { 0 },
        nontrivial: m >= 1,
        grid: reports,
    }
}

pub fn crest_lower_bound(f: &Function, grid: &[f64]) -> Result<BoundCertificate> {
    crest_lower_bound_refined(f, grid, 0)
}

/// Points added around the current best `z` per refinement round.
pub const REFINE_POINTS: usize = 16;

/// Like [`crest_lower_bound`], then `depth` rounds of local search: each
/// round samples [`REFINE_POINTS`] points between the neighbours of the
/// current best grid point and adds them to the grid.
pub fn crest_lower_bound_refined(f: &Function, grid: &[f64], depth: usize) -> Result<BoundCertificate> {
    validate_grid(grid)?;
    let ctx = QContext::new(f)?;
    let mut zs = grid.to_vec();
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let mut reports = evaluate_grid(&ctx, &zs)?;
    for _ in 0..depth {
        let i = best_index(&reports);
        let lo = if i > 0 { reports[i - 1].z } else { reports[i].z * 0.5 };
        let hi = if i + 1 < reports.len() {
            reports[i + 1].z
        } else {
            reports[i].z * 2.0
        };
        let fresh: Vec<f64> = (1..=REFINE_POINTS)
            .map(|k| lo + (hi - lo) * k as f64 / (REFINE_POINTS + 1) as f64)
            .filter(|z| !zs.contains(z))
            .collect();
        if fresh.is_empty() {
            break;
        }
        reports.extend(evaluate_grid(&ctx, &fresh)?);
        zs.extend(fresh);
        reports.sort_by(|a, b| a.z.total_cmp(&b.z));
        zs.sort_by(f64::total_cmp);
    }
    Ok(certificate(reports))
}
