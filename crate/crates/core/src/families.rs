//! Seeded random function families for the property suites.
//!
//! Every trial draws from its own generator: ChaCha8 seeded with the suite
//! seed, with the stream set to the trial index. Trials are therefore
//! independent of evaluation order and thread count, and the same
//! `(seed, trial)` pair reproduces the same function in unit tests, the
//! acceptance suite and `crestimate verify`.
//!
//! Breakpoints and values are dyadic rationals of modest size, so sums,
//! differences and products stay exact in double precision and identities
//! like `int f* = int f` can be compared with `==`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::piecewise::{PiecewiseLinearFunction, StepFunction};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn width(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(1..=16) as f64 / 8.0
}

fn level(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(1..=64) as f64 / 16.0
}

fn offset(rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> f64 {
    rng.gen_range(lo * 4..=hi * 4) as f64 / 4.0
}

fn build(start: f64, widths: &[f64], values: Vec<f64>) -> StepFunction {
    let mut bps = Vec::with_capacity(widths.len() + 1);
    let mut x = start;
    bps.push(x);
    for w in widths {
        x += w;
        bps.push(x);
    }
    StepFunction::new(bps, values).expect("generated pieces are valid")
}

/// 1 to `max_pieces` raw pieces with zero gaps (about a quarter of the
/// values are zero), placed anywhere in `[-8, 8]`. Never identically zero.
pub fn random_step(rng: &mut ChaCha8Rng, max_pieces: usize) -> StepFunction {
    let n = rng.gen_range(1..=max_pieces);
    let widths: Vec<f64> = (0..n).map(|_| width(rng)).collect();
    let mut values: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.25) { 0.0 } else { level(rng) })
        .collect();
    if values.iter().all(|&v| v == 0.0) {
        let i = rng.gen_range(0..n);
        values[i] = level(rng);
    }
    let start = offset(rng, -8, 8);
    build(start, &widths, values)
}

/// Values from the small alphabet `{0, 1/2, 1, 3/2, 2}`, so ties and zero
/// runs are frequent.
pub fn random_tied_step(rng: &mut ChaCha8Rng, max_pieces: usize) -> StepFunction {
    let n = rng.gen_range(1..=max_pieces);
    let widths: Vec<f64> = (0..n).map(|_| width(rng)).collect();
    let mut values: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=4) as f64 / 2.0).collect();
    if values.iter().all(|&v| v == 0.0) {
        values[0] = 1.0;
    }
    let start = offset(rng, -4, 4);
    build(start, &widths, values)
}

/// Nonincreasing, positive on `[0, x_n)`.
pub fn random_decreasing_step(rng: &mut ChaCha8Rng, max_pieces: usize) -> StepFunction {
    let n = rng.gen_range(1..=max_pieces);
    let widths: Vec<f64> = (0..n).map(|_| width(rng)).collect();
    let mut values: Vec<f64> = (0..n).map(|_| level(rng)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    build(0.0, &widths, values)
}

/// An increasing run, a peak and a decreasing run, placed in `[0, 8]`.
pub fn random_one_crest_step(rng: &mut ChaCha8Rng, max_run: usize) -> StepFunction {
    let up = rng.gen_range(0..=max_run);
    let down = rng.gen_range(0..=max_run);
    let peak = level(rng);
    let mut rising: Vec<f64> = (0..up).map(|_| level(rng).min(peak)).collect();
    rising.sort_by(f64::total_cmp);
    let mut falling: Vec<f64> = (0..down).map(|_| level(rng).min(peak)).collect();
    falling.sort_by(|a, b| b.total_cmp(a));
    let mut values = rising;
    values.push(peak);
    values.extend(falling);
    let widths: Vec<f64> = (0..values.len()).map(|_| width(rng)).collect();
    let start = offset(rng, 0, 8);
    build(start, &widths, values)
}

/// 3 to `max_nodes` nodes with zero end values, placed in `[-8, 8]`.
pub fn random_linear(rng: &mut ChaCha8Rng, max_nodes: usize) -> PiecewiseLinearFunction {
    let n = rng.gen_range(3..=max_nodes.max(3));
    let mut nodes = Vec::with_capacity(n);
    let mut x = offset(rng, -8, 8);
    nodes.push(x);
    for _ in 1..n {
        x += width(rng);
        nodes.push(x);
    }
    let mut values: Vec<f64> = (0..n)
        .map(|i| if i == 0 || i == n - 1 { 0.0 } else { level(rng) })
        .collect();
    values[n / 2] = values[n / 2].max(1.0);
    PiecewiseLinearFunction::new(nodes, values).expect("generated nodes are valid")
}

/// A positive step weight with 1 to 4 pieces on `[0, inf)`. When
/// `avoid_zero` is set the support starts at 1/8 or later.
pub fn random_weight(rng: &mut ChaCha8Rng, avoid_zero: bool) -> StepFunction {
    let n = rng.gen_range(1..=4);
    let start = if avoid_zero || rng.gen_bool(0.5) {
        rng.gen_range(1..=16) as f64 / 8.0
    } else {
        0.0
    };
    let widths: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=24) as f64 / 8.0).collect();
    let values: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=16) as f64 / 8.0).collect();
    build(start, &widths, values)
}

/// `count` frequencies, one drawn log-uniformly from each of `count` equal
/// slices of `[lo, hi]` in log scale.
pub fn log_spaced_frequencies(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / count as f64;
    (0..count)
        .map(|i| (a + step * (i as f64 + rng.gen::<f64>())).exp())
        .collect()
}

/// A random interval `[a, b)` with dyadic endpoints in `[-10, 10]`.
pub fn random_interval(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = offset(rng, -10, 9);
    let len = rng.gen_range(1..=40) as f64 / 8.0;
    (a, a + len)
}
