use proptest::prelude::*;

use crestimate::bounds::{crest_lower_bound, theorem1_bound};
use crestimate::crests::{count_crests, decompose, is_unimodal};
use crestimate::hardy::{hardy_lhs, hardy_lhs_unsubstituted};
use crestimate::io::{parse_json, to_json};
use crestimate::rearrange::{distribution, rearrangement, rearrangement_integral};
use crestimate::transform::fourier;
use crestimate::{Function, PiecewiseLinearFunction, StepFunction};

prop_compose! {
    fn step_fn(max_pieces: usize)(
        start in -32i32..32,
        pieces in prop::collection::vec((1u32..=16, 0u32..=64), 1..=max_pieces),
        bump in 0usize..64,
    ) -> StepFunction {
        let mut bps = vec![start as f64 / 4.0];
        let mut vals = Vec::new();
        for (w, v) in &pieces {
            bps.push(bps.last().unwrap() + *w as f64 / 8.0);
            vals.push(*v as f64 / 16.0);
        }
        if vals.iter().all(|&v| v == 0.0) {
            let i = bump % vals.len();
            vals[i] = 1.0;
        }
        StepFunction::new(bps, vals).unwrap()
    }
}

prop_compose! {
    fn linear_fn()(
        start in -32i32..32,
        inner in prop::collection::vec((1u32..=16, 1u32..=64), 1..10),
        last in 1u32..=16,
    ) -> PiecewiseLinearFunction {
        let mut nodes = vec![start as f64 / 4.0];
        let mut vals = vec![0.0];
        for (w, v) in &inner {
            nodes.push(nodes.last().unwrap() + *w as f64 / 8.0);
            vals.push(*v as f64 / 16.0);
        }
        nodes.push(nodes.last().unwrap() + last as f64 / 8.0);
        vals.push(0.0);
        PiecewiseLinearFunction::new(nodes, vals).unwrap()
    }
}

fn any_fn() -> impl Strategy<Value = Function> {
    prop_oneof![step_fn(20).prop_map(Function::from), linear_fn().prop_map(Function::from)]
}

fn decreasing_fn() -> impl Strategy<Value = Function> {
    prop::collection::vec((1u32..=16, 1u32..=64), 1..=8).prop_map(|mut pieces| {
        pieces.sort_by_key(|p| std::cmp::Reverse(p.1));
        let mut bps = vec![0.0];
        let mut vals = Vec::new();
        for (w, v) in pieces {
            bps.push(bps.last().unwrap() + w as f64 / 8.0);
            vals.push(v as f64 / 16.0);
        }
        StepFunction::new(bps, vals).unwrap().into()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_idempotent(f in step_fn(20)) {
        let again = StepFunction::new(f.breakpoints().to_vec(), f.values().to_vec()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn integrals_are_additive(f in any_fn(), a in -12.0f64..12.0, b in -12.0f64..12.0, c in -12.0f64..12.0) {
        let lhs = f.integrate(a, b) + f.integrate(b, c);
        prop_assert!((lhs - f.integrate(a, c)).abs() <= 1e-12 * (1.0 + f.total_integral()));
        prop_assert_eq!(f.integrate(a, b), -f.integrate(b, a));
    }

    #[test]
    fn json_round_trip(f in any_fn()) {
        prop_assert_eq!(parse_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn rearrangement_is_decreasing_and_equimeasurable(f in any_fn(), alpha in 0.01f64..4.5) {
        let star = rearrangement(&f).into_star();
        prop_assert!(star.is_decreasing_on_half_line());
        let tol = if f.as_step().is_some() { 0.0 } else { 1e-12 };
        prop_assert!((distribution(&f, alpha).unwrap() - distribution(&star, alpha).unwrap()).abs() <= tol);
        prop_assert!((star.total_integral() - f.total_integral()).abs() <= 1e-12 * f.total_integral());
        let twice = rearrangement(&star).into_star();
        if f.as_step().is_some() {
            prop_assert_eq!(twice, star);
        } else {
            let end = star.support().1;
            for k in 0..=64 {
                let x = end * k as f64 / 64.0;
                prop_assert!((twice.evaluate(x) - star.evaluate(x)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn rearrangement_dominates_every_interval(f in step_fn(20), a in -10.0f64..10.0, len in 0.01f64..6.0) {
        let rhs = rearrangement_integral(&f.clone().into(), len).unwrap();
        prop_assert!(f.integrate(a, a + len) <= rhs + 1e-12);
    }

    #[test]
    fn crest_count_symmetries(f in any_fn(), c in 0.1f64..10.0, shift in -5.0f64..5.0) {
        let n = count_crests(&f).unwrap();
        prop_assert_eq!(count_crests(&f.reflect()).unwrap(), n);
        prop_assert_eq!(count_crests(&f.scale(c).unwrap()).unwrap(), n);
        prop_assert_eq!(count_crests(&f.translate(shift).unwrap()).unwrap(), n);
    }

    #[test]
    fn decomposition_reassembles(f in any_fn(), xs in prop::collection::vec(-12.0f64..12.0, 8)) {
        let r = decompose(&f).unwrap();
        prop_assert_eq!(r.count, count_crests(&f).unwrap());
        prop_assert_eq!(r.pieces.len(), r.count);
        prop_assert!(r.pieces.iter().all(is_unimodal));
        for x in xs {
            let s: f64 = r.pieces.iter().map(|p| p.evaluate(x)).sum();
            prop_assert!((s - f.evaluate(x)).abs() <= 1e-12);
        }
    }

    #[test]
    fn transform_basics(f in any_fn(), z in -50.0f64..50.0) {
        let v = fourier(&f, z);
        prop_assert!(v.norm() <= f.total_integral() * (1.0 + 1e-12));
        prop_assert_eq!(fourier(&f, -z), v.conj());
        let moved = fourier(&f.translate(0.75).unwrap(), z).norm();
        prop_assert!((moved - v.norm()).abs() <= 1e-12 * (1.0 + f.total_integral()));
    }

    #[test]
    fn crest_bound_and_certificate(f in any_fn(), zs in prop::collection::vec(1e-3f64..1e3, 1..20), c in 0.1f64..10.0) {
        let n = count_crests(&f).unwrap();
        for &z in &zs {
            let r = theorem1_bound(&f, z).unwrap();
            prop_assert!(r.transform_magnitude <= r.theorem1_bound * (1.0 + 1e-9));
            let scaled = theorem1_bound(&f.scale(c).unwrap(), z).unwrap();
            prop_assert!((scaled.q_value - r.q_value).abs() <= 1e-12 * (1.0 + r.q_value));
        }
        let cert = crest_lower_bound(&f, &zs).unwrap();
        prop_assert!(cert.crest_lower_bound as usize <= n);
    }

    #[test]
    fn hardy_forms_agree(f in decreasing_fn(), a in 1u32..=8, len in 1u32..=16, q in prop::sample::select(vec![0.5, 1.0, 2.0, 3.0])) {
        let u = StepFunction::boxcar(a as f64 / 8.0, (a + len) as f64 / 8.0, 1.0).unwrap();
        let s = hardy_lhs(&f, &u, q).unwrap().value;
        let t = hardy_lhs_unsubstituted(&f, &u, q).unwrap().value;
        prop_assert!((s - t).abs() <= 1e-6 * s);
    }
}
