mod common;

use amalgam_core::verifier::*;
use amalgam_core::{a_norm, AmalgamError, SuiteReport};
use common::*;

fn show(r: &SuiteReport) {
    let failed: Vec<_> = r.cases.iter().filter(|c| !c.pass).collect();
    eprintln!(
        "{}: {} cases, pass={}, refined={}, delta={:.2e}, notes={:?}, failed={:#?}",
        r.theorem_tag,
        r.cases.len(),
        r.overall_pass,
        r.refined_pass,
        r.grid_refinement_delta,
        r.notes,
        failed.iter().take(3).collect::<Vec<_>>()
    );
}

#[test]
fn algebra_chain_on_corpus() {
    let specs = [
        space(2.0, 2.0, 2.0, 0.0, 0.0),
        space(3.0, 2.0, 1.0, 0.0, 0.0),
        space(2.0, 2.0, 2.0, 1.0, 1.0),
        space(3.0, 2.0, 1.0, 1.0, 1.0),
    ];
    let r = algebra_suite(&corpus(grid()), &specs).unwrap();
    show(&r);
    assert_eq!(r.cases.len(), 36 * 4);
    assert!(r.stable_pass());
}

#[test]
fn bf_chain_on_corpus() {
    let r = bf_chain(&corpus(grid()), &space(3.0, 2.0, 1.0, 1.0, 1.0)).unwrap();
    show(&r);
    assert!(r.stable_pass());
}

#[test]
fn translation_suite() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let ys = [0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0];
    for f in smooth(grid()) {
        let r = translation_bounds(&f, &s, &ys).unwrap();
        show(&r);
        assert!(r.stable_pass());
    }
    let f = gaussian(grid());
    let eps = 0.1 * a_norm(&f, &s).unwrap().total;
    let r = translation_continuity(&f, &s, &[eps]).unwrap();
    show(&r);
    assert!(r.stable_pass());
}

#[test]
fn noncompactness() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let f = gaussian(grid());
    let r = noncompactness_witness(&f, &poly(1.0), &s, &[1.0, 2.0, 4.0, 8.0]).unwrap();
    show(&r);
    assert!(r.stable_pass());
    let err = noncompactness_witness(&f, &poly(0.0), &s, &[1.0, 2.0, 4.0, 8.0]).unwrap_err();
    assert!(matches!(err, AmalgamError::HypothesisViolation(_)));
}

#[test]
fn approximate_identity_gaussian() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let f = gaussian(grid());
    let r = approximate_identity(&f, &s, &[1.0, 0.5, 0.25, 0.125]).unwrap();
    show(&r);
    assert!(r.stable_pass());
    assert!(r.cases.iter().any(|c| c.label.ends_with("band limit") && c.measured.contains_key("kernel_gap")));
}

#[test]
fn approximate_identity_on_a_bump_is_monotone() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let g = bump(0.0, 0.5, grid());
    let r = approximate_identity(&g, &s, &[1.0, 0.5, 0.25, 0.125]).unwrap();
    let monotone = r.cases.iter().find(|c| c.label.ends_with("monotone")).unwrap();
    assert!(monotone.pass);
}

#[test]
fn embedding_constants_hold() {
    let pairs = [
        (space(3.0, 2.0, 1.0, 0.0, 0.0), space(2.0, 2.0, 2.0, 0.0, 0.0)),
        (space(2.0, 2.0, 2.0, 2.0, 1.0), space(2.0, 2.0, 2.0, 1.0, 0.0)),
        (space(3.0, 3.0, 1.0, 2.0, 1.0), space(2.0, 2.0, 2.0, 1.0, 0.0)),
    ];
    for (src, dst) in pairs {
        let r = embedding_constant(&src, &dst, &corpus(grid())).unwrap();
        show(&r);
        assert!(r.stable_pass());
    }
    let err = embedding_constant(&space(2.0, 2.0, 2.0, 0.0, 0.0), &space(2.0, 2.0, 2.0, 1.0, 0.0), &corpus(grid()));
    assert!(matches!(err, Err(AmalgamError::HypothesisViolation(_))));
}

#[test]
fn divergence_on_definite_negative() {
    let g = amalgam_core::GridSpec::new(128, 16).unwrap();
    let ts: Vec<f64> = [0.0, 15.0, 30.0, 60.0, 120.0].to_vec();
    let r = divergence_scan(&space(2.0, 2.0, 2.0, 0.0, 0.0), &space(2.0, 2.0, 2.0, 1.0, 0.0), &gaussian(g), &ts).unwrap();
    show(&r);
    assert!(r.stable_pass());
}

#[test]
fn vague_pairings_respect_holder() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let fs: Vec<_> = [1.0, 2.0, 4.0, 8.0]
        .iter()
        .map(|&t| amalgam_core::translate(&gaussian(grid()), t).unwrap().scale_real(1.0 / (1.0 + t)))
        .collect();
    let r = vague_convergence(&fs, &bump(0.0, 1.0, grid()), &s).unwrap();
    assert!(r.stable_pass());
    assert!(vague_convergence(&fs, &gaussian(grid()), &s).is_err());
}

#[test]
fn module() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0).with_module_weight(poly(2.0));
    let r = module_suite(&corpus(grid()), &s).unwrap();
    show(&r);
    assert!(r.stable_pass());
}

#[test]
fn unweighted_translation_preserves_the_norm() {
    let s = space(2.0, 2.0, 2.0, 0.0, 0.0);
    for f in corpus(grid()) {
        let r = translation_bounds(&f, &s, &[1.0, -2.0, 4.0]).unwrap();
        for c in r.cases.iter().filter(|c| c.measured.contains_key("ratio")) {
            assert!((c.measured["ratio"] - 1.0).abs() <= 1e-13, "{}", c.label);
        }
    }
}

#[test]
fn witness_boundedness_agrees_with_translation_bounds() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let f = gaussian(grid());
    let ts = [1.0, 2.0, 4.0, 8.0];
    let w = noncompactness_witness(&f, &poly(1.0), &s, &ts).unwrap();
    let t = translation_bounds(&f, &s, &ts).unwrap();
    for (a, b) in w.cases.iter().zip(&t.cases).take(ts.len()) {
        let bounded = a.measured["bounded"];
        let upper = b.measured["upper"] / s.theta1().eval(b.inputs["y"].parse::<f64>().unwrap()).unwrap();
        assert!((bounded - upper).abs() <= 1e-12 * upper, "{} vs {}", a.label, b.label);
    }
}

#[test]
fn embedding_into_itself_has_ratio_one() {
    let s = space(3.0, 2.0, 1.0, 1.0, 0.5);
    let r = embedding_constant(&s, &s, &corpus(grid())).unwrap();
    assert!(r.cases.iter().all(|c| c.measured["ratio"] == 1.0));
}

#[test]
fn window_filling_indicator_is_compared_on_the_inner_half() {
    let s = space(2.0, 2.0, 2.0, 0.0, 0.0);
    let f = amalgam_core::make_indicator::<f64>(-16.0, 16.0, grid()).unwrap();
    let r = approximate_identity(&f, &s, &[0.25]).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("window edge")));
    assert!(r.stable_pass());
}

#[test]
fn continuity_excludes_discontinuous_inputs() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let chi = amalgam_core::make_indicator::<f64>(0.0, 1.0, grid()).unwrap();
    assert!(matches!(translation_continuity(&chi, &s, &[0.1]), Err(AmalgamError::HypothesisViolation(_))));
}
