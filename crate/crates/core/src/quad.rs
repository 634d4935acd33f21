//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The integration range is given as a list of initial panel edges, so
//! callers can place edges at kinks and jumps of the integrand. Panels are
//! bisected worst-first until the summed error estimate meets the
//! tolerance, or the panel budget runs out, which is reported as
//! [`Error::Convergence`].

// nodes and weights are quoted to full published precision
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Values the quadrature can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-8,
            max_panels: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub panels: usize,
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).magnitude())
}

/// Integrates `f` over `[edges[0], edges[last]]`, starting from the panels
/// delimited by `edges` (which must be nondecreasing; empty panels are
/// skipped).
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    edges: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    let mut heap = BinaryHeap::new();
    for w in edges.windows(2) {
        if w[1] > w[0] {
            let (value, error) = gk15(&f, w[0], w[1]);
            heap.push(Panel {
                a: w[0],
                b: w[1],
                value,
                error,
            });
        }
    }
    let totals = |heap: &BinaryHeap<Panel<T>>| {
        heap.iter().fold((T::zero(), 0.0), |(v, e), p| (v + p.value, e + p.error))
    };
    let (mut value, mut error) = totals(&heap);
    let mut steps = 0usize;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        if error <= target {
            break;
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::Convergence {
                panels: heap.len(),
                estimate: value.magnitude(),
                error,
            });
        }
        let worst = heap.pop().expect("nonempty when error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::Convergence {
                panels: heap.len() + 1,
                estimate: value.magnitude(),
                error,
            });
        }
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        value = value - worst.value + lv + rv;
        error = error - worst.error + le + re;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        steps += 1;
        // running sums drift; resynchronise now and then
        if steps.is_multiple_of(1024) {
            (value, error) = totals(&heap);
        }
    }
    let (value, error) = totals(&heap);
    Ok(QuadResult {
        value,
        error_estimate: error,
        panels: heap.len(),
    })
}

/// Splits each interval between consecutive `edges` into equal panels no
/// wider than `max_width`.
pub fn refine_edges(edges: &[f64], max_width: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(edges.len());
    if let Some(&first) = edges.first() {
        out.push(first);
    }
    for w in edges.windows(2) {
        let len = w[1] - w[0];
        if len <= 0.0 {
            continue;
        }
        let pieces = if max_width.is_finite() && max_width > 0.0 {
            ((len / max_width).ceil() as usize).max(1)
        } else {
            1
        };
        for k in 1..pieces {
            out.push(w[0] + len * (k as f64 / pieces as f64));
        }
        out.push(w[1]);
    }
    out
}
