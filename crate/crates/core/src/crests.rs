//! Crest counting: the least number of unimodal, almost-disjointly
//! supported nonnegative summands of a function.
//!
//! Monotonicity is in the wide sense throughout, so plateaus neither start
//! nor end a valley. For both representations the count is one plus the
//! number of valleys in the zero-padded value sequence (piece values for
//! steps, node values for piecewise-linear functions).
//!
//! The minimum is taken over decompositions into interval cells. The
//! brute-force oracle searches all such decompositions on small inputs;
//! if a non-interval decomposition ever beat it, the count here would be an
//! upper bound rather than the minimum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::piecewise::{Function, StepFunction};

/// Largest canonical piece count accepted by [`brute_force_crests`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// A minimal unimodal decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrestReport {
    pub count: usize,
    pub cut_points: Vec<f64>,
    pub crest_locations: Vec<f64>,
    #[serde(skip)]
    pub pieces: Vec<Function>,
}

/// A maximal run of equal consecutive entries in the padded sequence.
#[derive(Debug, Clone, Copy)]
struct Run {
    value: f64,
    first: usize,
    last: usize,
}

fn runs(values: &[f64]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(r) if r.value == v => r.last = i,
            _ => out.push(Run {
                value: v,
                first: i,
                last: i,
            }),
        }
    }
    out
}

fn padded(values: &[f64]) -> Vec<f64> {
    let mut seq = Vec::with_capacity(values.len() + 2);
    seq.push(0.0);
    seq.extend_from_slice(values);
    seq.push(0.0);
    seq
}

/// Indices (into `runs`) of strict local minima, excluding the end runs.
fn valley_runs(rs: &[Run]) -> Vec<usize> {
    (1..rs.len().saturating_sub(1))
        .filter(|&i| rs[i - 1].value > rs[i].value && rs[i + 1].value > rs[i].value)
        .collect()
}

fn count_peaks(values: &[f64]) -> usize {
    let rs = runs(&padded(values));
    (1..rs.len().saturating_sub(1))
        .filter(|&i| rs[i - 1].value < rs[i].value && rs[i + 1].value < rs[i].value)
        .count()
}

fn sequence(f: &Function) -> &[f64] {
    match f {
        Function::Step(s) => s.values(),
        Function::Linear(l) => l.node_values(),
    }
}

/// True when `f` is nonzero and crests exactly once.
pub fn is_unimodal(f: &Function) -> bool {
    count_peaks(sequence(f)) == 1
}

pub fn count_crests(f: &Function) -> Result<usize> {
    f.require_nonzero()?;
    Ok(count_peaks(sequence(f)))
}

pub fn decompose(f: &Function) -> Result<CrestReport> {
    f.require_nonzero()?;
    let seq = padded(sequence(f));
    let rs = runs(&seq);
    let valleys = valley_runs(&rs);
    // padded index i corresponds to piece (or node) i - 1
    let cut_points: Vec<f64> = valleys
        .iter()
        .map(|&vi| {
            let r = rs[vi];
            match f {
                Function::Step(s) => {
                    let bps = s.breakpoints();
                    0.5 * (bps[r.first - 1] + bps[r.last])
                }
                Function::Linear(l) => {
                    let nodes = l.nodes();
                    0.5 * (nodes[r.first - 1] + nodes[r.last - 1])
                }
            }
        })
        .collect();

    let mut edges = Vec::with_capacity(cut_points.len() + 2);
    edges.push(f64::NEG_INFINITY);
    edges.extend_from_slice(&cut_points);
    edges.push(f64::INFINITY);

    let mut pieces = Vec::with_capacity(edges.len() - 1);
    let mut crest_locations = Vec::with_capacity(edges.len() - 1);
    for w in edges.windows(2) {
        let piece = match f {
            Function::Step(s) => Function::Step(s.restrict(w[0], w[1])),
            Function::Linear(l) => Function::Linear(
                l.restrict(w[0], w[1])
                    .expect("every cell between valleys overlaps the support"),
            ),
        };
        crest_locations.push(leftmost_maximizer(&piece));
        pieces.push(piece);
    }
    Ok(CrestReport {
        count: pieces.len(),
        cut_points,
        crest_locations,
        pieces,
    })
}

fn leftmost_maximizer(f: &Function) -> f64 {
    let (xs, vals) = match f {
        Function::Step(s) => (s.breakpoints(), s.values()),
        Function::Linear(l) => (l.nodes(), l.node_values()),
    };
    let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let i = vals.iter().position(|&v| v == max).unwrap_or(0);
    xs[i]
}

/// Exhaustive minimum over all partitions of the pieces into contiguous
/// cells whose restrictions each crest at most once.
pub fn brute_force_crests(f: &StepFunction) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let vals = f.values();
    let n = vals.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyPieces {
            pieces: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let unimodal = |cell: &[f64]| count_peaks(cell) <= 1;
    let mut best = usize::MAX;
    for mask in 0u32..(1 << (n - 1)) {
        let mut start = 0;
        let mut ok = true;
        for i in 0..n {
            let cut_after = i + 1 < n && mask & (1 << i) != 0;
            if cut_after || i + 1 == n {
                if !unimodal(&vals[start..=i]) {
                    ok = false;
                    break;
                }
                start = i + 1;
            }
        }
        if ok {
            best = best.min(mask.count_ones() as usize + 1);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::comb_example;
    use crate::piecewise::PiecewiseLinearFunction;

    fn step(bps: &[f64], vals: &[f64]) -> Function {
        StepFunction::new(bps.to_vec(), vals.to_vec()).unwrap().into()
    }

    fn unit_steps(vals: &[f64]) -> Function {
        let bps: Vec<f64> = (0..=vals.len()).map(|i| i as f64).collect();
        step(&bps, vals)
    }

    #[test]
    fn two_boxes_crest_twice() {
        let f = step(&[0.0, 1.0, 2.0, 3.0], &[1.0, 0.0, 1.0]);
        assert_eq!(count_crests(&f).unwrap(), 2);
        let r = decompose(&f).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.cut_points, vec![1.5]);
        assert_eq!(r.crest_locations, vec![0.0, 2.0]);
        assert_eq!(brute_force_crests(f.as_step().unwrap()).unwrap(), 2);
    }

    #[test]
    fn constants_and_decreasing_functions_crest_once() {
        let c = step(&[0.0, 5.0], &[3.0]);
        assert_eq!(count_crests(&c).unwrap(), 1);
        let d = step(&[0.0, 1.0, 2.0, 4.0], &[3.0, 2.0, 0.5]);
        assert_eq!(count_crests(&d).unwrap(), 1);
        let r = decompose(&d).unwrap();
        assert!(r.cut_points.is_empty());
        assert_eq!(r.crest_locations, vec![0.0]);
        assert_eq!(brute_force_crests(d.as_step().unwrap()).unwrap(), 1);
    }

    #[test]
    fn comb_has_five_n_crests() {
        for n in 1..=8 {
            let f: Function = comb_example(n).unwrap().into();
            assert_eq!(count_crests(&f).unwrap(), 5 * n as usize);
        }
        let f = comb_example(1).unwrap();
        assert_eq!(brute_force_crests(&f).unwrap(), 5);
    }

    #[test]
    fn three_one_two() {
        let f = unit_steps(&[3.0, 1.0, 2.0]);
        assert_eq!(count_crests(&f).unwrap(), 2);
        assert_eq!(brute_force_crests(f.as_step().unwrap()).unwrap(), 2);
        let r = decompose(&f).unwrap();
        assert_eq!(r.cut_points, vec![1.5]);
        assert_eq!(r.crest_locations, vec![0.0, 2.0]);
        assert!(r.pieces.iter().all(is_unimodal));
    }

    #[test]
    fn plateau_valley_is_a_single_valley() {
        let f = unit_steps(&[2.0, 1.0, 1.0, 2.0]);
        assert_eq!(count_crests(&f).unwrap(), 2);
        let f = unit_steps(&[1.0, 2.0, 2.0, 1.0, 3.0, 3.0, 0.0, 1.0]);
        assert_eq!(count_crests(&f).unwrap(), 3);
        assert_eq!(brute_force_crests(f.as_step().unwrap()).unwrap(), 3);
    }

    #[test]
    fn linear_inputs_use_node_values() {
        let tri: Function = PiecewiseLinearFunction::triangle(0.0, 2.0, 1.0).unwrap().into();
        assert_eq!(count_crests(&tri).unwrap(), 1);
        let r = decompose(&tri).unwrap();
        assert_eq!(r.crest_locations, vec![1.0]);

        // two triangles joined by a flat zero run on [2, 3]
        let two: Function = PiecewiseLinearFunction::new(
            vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
            vec![0.0, 1.0, 0.0, 0.0, 2.0, 0.0],
        )
        .unwrap()
        .into();
        let r = decompose(&two).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.cut_points, vec![2.5]);
        assert_eq!(r.crest_locations, vec![1.0, 4.0]);

        // valley at a single node with nonzero value
        let w: Function = PiecewiseLinearFunction::new(
            vec![0.0, 1.0, 2.0, 3.0, 4.0],
            vec![0.0, 2.0, 0.5, 3.0, 0.0],
        )
        .unwrap()
        .into();
        let r = decompose(&w).unwrap();
        assert_eq!(r.cut_points, vec![2.0]);
        for x in [0.3, 1.7, 2.2, 3.9] {
            let s: f64 = r.pieces.iter().map(|p| p.evaluate(x)).sum();
            assert!((s - w.evaluate(x)).abs() < 1e-15);
        }
        assert!(r.pieces.iter().all(is_unimodal));
    }

    #[test]
    fn zero_function_is_rejected() {
        let z: Function = StepFunction::zero().into();
        assert_eq!(count_crests(&z), Err(Error::ZeroFunction));
        assert!(decompose(&z).is_err());
        assert!(brute_force_crests(&StepFunction::zero()).is_err());
    }

    #[test]
    fn brute_force_budget() {
        let vals: Vec<f64> = (0..11).map(|i| (i % 3) as f64 + 1.0).collect();
        let f = unit_steps(&vals);
        assert!(matches!(
            brute_force_crests(f.as_step().unwrap()),
            Err(Error::TooManyPieces { pieces: 11, .. })
        ));
    }

    #[test]
    fn reflection_and_scaling_invariance() {
        let f = unit_steps(&[1.0, 3.0, 0.0, 2.0, 2.0, 1.0, 4.0]);
        let n = count_crests(&f).unwrap();
        assert_eq!(count_crests(&f.reflect()).unwrap(), n);
        assert_eq!(count_crests(&f.scale(0.3).unwrap()).unwrap(), n);
    }
}
