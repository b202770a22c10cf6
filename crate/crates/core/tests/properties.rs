mod common;

use amalgam_core::{
    a_norm, amalgam_norm, band_limit, dominates, local_norm, make_gaussian_at, multiplier_norm_estimate, DiscreteMeasure, Exponent,
    GridSpec, SampledFunction64,
};
use common::*;
use num_complex::Complex;
use proptest::prelude::*;

fn small() -> GridSpec {
    GridSpec::new(8, 64).unwrap()
}

/// Random complex combination of two corpus members.
fn member() -> impl Strategy<Value = SampledFunction64> {
    (0..6usize, 0..6usize, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(i, j, a, b, c)| {
        let fs = corpus(small());
        fs[i].combine(Complex::new(a, b), &fs[j], Complex::new(c, 0.0)).unwrap()
    })
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        (1.0..6.0f64).prop_map(Exponent::Finite),
        Just(Exponent::Infinite),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn global_matches_recomputed_locals(f in member(), p in exponent(), q in exponent(), s in 0.0..3.0f64) {
        let r = amalgam_norm(&f, p, q, &poly(s)).unwrap();
        prop_assert!((r.recompute_global() - r.global).abs() <= 1e-14 * r.global.max(f64::MIN_POSITIVE));
        prop_assert!(r.locals.values().all(|&v| v >= 0.0));
    }

    #[test]
    fn lq_nesting(f in member(), p in exponent(), q1 in 1.0..4.0f64, dq in 0.0..4.0f64) {
        let w = poly(1.0);
        let a = amalgam_norm(&f, p, Exponent::Finite(q1), &w).unwrap().global;
        let b = amalgam_norm(&f, p, Exponent::Finite(q1 + dq), &w).unwrap().global;
        let c = amalgam_norm(&f, p, Exponent::Infinite, &w).unwrap().global;
        prop_assert!(b <= a * (1.0 + 1e-13));
        prop_assert!(c <= b * (1.0 + 1e-13));
    }

    #[test]
    fn local_holder(f in member(), p2 in 1.0..4.0f64, dp in 0.0..4.0f64, n in -8i64..8) {
        let w = poly(1.0);
        let lo = local_norm(&f, n, Exponent::Finite(p2), &w).unwrap();
        let hi = local_norm(&f, n, Exponent::Finite(p2 + dp), &w).unwrap();
        let top = local_norm(&f, n, Exponent::Infinite, &w).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-6), "{} p2={p2} dp={dp} n={n} lo={lo} hi={hi}", f.label());
        prop_assert!(hi <= top * (1.0 + 1e-6));
    }

    #[test]
    fn weight_monotonicity(f in member(), p in exponent(), q in exponent(), s3 in 0.0..2.0f64, ds in 0.0..2.0f64) {
        let (w3, w1) = (poly(s3), poly(s3 + ds));
        let probes: Vec<f64> = (-100..=100).map(f64::from).collect();
        let dom = dominates(&w3, &w1, &probes, 1e6).unwrap();
        prop_assert!(dom.holds);
        let c = dom.constant.unwrap();
        let a = amalgam_norm(&f, p, q, &w3).unwrap().global;
        let b = amalgam_norm(&f, p, q, &w1).unwrap().global;
        prop_assert!(a <= c * b * (1.0 + 1e-12));
    }

    #[test]
    fn amalgam_norm_is_a_norm(f in member(), g in member(), p in exponent(), q in exponent(), re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let w = poly(1.0);
        let n = |h: &SampledFunction64| amalgam_norm(h, p, q, &w).unwrap().global;
        let c = Complex::new(re, im);
        prop_assert!((n(&f.scale(c)) - c.norm() * n(&f)).abs() <= 1e-12 * (c.norm() * n(&f)).max(1e-300));
        prop_assert!(n(&f.add(&g).unwrap()) <= (n(&f) + n(&g)) * (1.0 + 1e-12));
    }

    #[test]
    fn a_norm_is_a_norm(f in member(), g in member(), re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let s = space(3.0, 2.0, 1.0, 1.0, 1.0);
        let n = |h: &SampledFunction64| a_norm(h, &s).unwrap().total;
        let c = Complex::new(re, im);
        prop_assert!((n(&f.scale(c)) - c.norm() * n(&f)).abs() <= 1e-12 * (c.norm() * n(&f)).max(1e-300));
        prop_assert!(n(&f.add(&g).unwrap()) <= (n(&f) + n(&g)) * (1.0 + 1e-12));
    }

    #[test]
    fn reciprocal_grid_is_involutive(l in 1usize..64, k in 1u32..10) {
        let g = GridSpec::new(l, 1 << k).unwrap();
        let r = g.reciprocal();
        prop_assert_eq!(r.reciprocal(), g);
        prop_assert_eq!(r.len(), g.len());
    }
}

fn band_limited_corpus() -> Vec<SampledFunction64> {
    [(0.0, 1.0), (-1.0, 0.5), (0.5, 2.0)]
        .iter()
        .map(|&(c, w)| band_limit(&make_gaussian_at::<f64>(c, w, small()).unwrap(), 8.0).unwrap())
        .collect()
}

#[test]
fn multiplier_estimate_for_dirac_masses() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let fs: Vec<_> = [gaussian(small()), gaussian(small()).scale_real(0.5)].into_iter().collect();
    let base = multiplier_norm_estimate(&DiscreteMeasure::dirac(0.0), &s, &fs[..1]).unwrap();
    assert!(base.estimate >= 1.0);
    let twice = multiplier_norm_estimate(&DiscreteMeasure::dirac(0.0).scaled(2.0), &s, &fs[..1]).unwrap();
    assert!((twice.estimate - 2.0 * base.estimate).abs() <= 1e-12 * base.estimate);
    let shifted = multiplier_norm_estimate(&DiscreteMeasure::dirac(2.0), &s, &fs[..1]).unwrap();
    assert!(shifted.estimate <= poly(1.0).eval(2.0).unwrap() * base.estimate * (1.0 + 1e-9));
}

#[test]
fn multiplier_estimate_grows_with_corpus() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let fs = band_limited_corpus();
    let mu = DiscreteMeasure::dirac(0.0).with_atom(1.0, Complex::new(0.5, 0.0));
    let mut last = 0.0;
    for k in 1..=fs.len() {
        let e = multiplier_norm_estimate(&mu, &s, &fs[..k]).unwrap().estimate;
        assert!(e >= last);
        last = e;
    }
}
