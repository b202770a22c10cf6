#![allow(dead_code)]

use amalgam_core::{make_bump, make_gaussian, make_gaussian_at, make_indicator, GridSpec, SampledFunction64, SpaceSpec, WeightSpec};

pub fn grid() -> GridSpec {
    GridSpec::new(16, 256).unwrap()
}

pub fn poly(s: f64) -> WeightSpec {
    WeightSpec::polynomial(s).unwrap()
}

pub fn space(p: f64, q: f64, r: f64, s1: f64, s2: f64) -> SpaceSpec {
    SpaceSpec::new(p, q, r, poly(s1), poly(s2)).unwrap()
}

pub fn corpus(g: GridSpec) -> Vec<SampledFunction64> {
    vec![
        make_gaussian(g).unwrap(),
        make_indicator(0.0, 1.0, g).unwrap(),
        make_indicator(-0.5, 1.5, g).unwrap(),
        make_bump(0.0, 0.5, g).unwrap(),
        make_bump(1.5, 1.0, g).unwrap(),
        make_gaussian_at(-2.0, 2.0, g).unwrap(),
    ]
}

pub fn smooth(g: GridSpec) -> Vec<SampledFunction64> {
    corpus(g).into_iter().filter(|f| f.jumps().is_empty()).collect()
}

pub fn gaussian(g: GridSpec) -> SampledFunction64 {
    make_gaussian(g).unwrap()
}

pub fn bump(c: f64, r: f64, g: GridSpec) -> SampledFunction64 {
    make_bump(c, r, g).unwrap()
}
