//! Reference values computed once at high resolution and frozen here, each
//! reproduced by an independent trapezoid pipeline at m = 8192.

mod common;

use amalgam_core::{a_norm, amalgam_norm, Exponent};
use common::*;

/// `Σ_n (∫_n e^{-2πx²}(1+|x|)² dx)^{1/2}` over the cells of `[-16, 16)`.
const G_STAR: f64 = 1.518_849_842_535_496_2;
/// `G*` plus the weighted L² norm of the Gaussian on the frequency grid of
/// `L = 16`: step 1/32 over `[-128, 128)`. The grid step is fixed by `L`, so
/// the kink of `1+|ξ|` leaves a 1.5e-4 gap to the continuum integral.
const A_STAR: f64 = 2.558_734_795_916_066_6;

fn weighted_gaussian_sq(x: f64) -> f64 {
    (-2.0 * std::f64::consts::PI * x * x).exp() * (1.0 + x.abs()).powi(2)
}

/// Trapezoid rule on `[a, b]` with `n` panels.
fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|k| f(a + k as f64 * h)).sum();
    h * (0.5 * f(a) + inner + 0.5 * f(b))
}

fn g_oracle(m: usize) -> f64 {
    (-16..16)
        .map(|n| trapezoid(weighted_gaussian_sq, n as f64, n as f64 + 1.0, m).sqrt())
        .sum()
}

fn a_oracle(m: usize) -> f64 {
    let freq: f64 = (-128..128)
        .map(|n| trapezoid(weighted_gaussian_sq, n as f64, n as f64 + 1.0, 32))
        .sum();
    g_oracle(m) + freq.sqrt()
}

#[test]
fn independent_pipeline_reproduces_frozen_values() {
    assert!((g_oracle(8192) - G_STAR).abs() < 1e-8, "{}", g_oracle(8192));
    assert!((a_oracle(8192) - A_STAR).abs() < 1e-8, "{}", a_oracle(8192));
}

#[test]
fn gaussian_amalgam_norm_matches_g_star() {
    for g in [grid(), grid().refined()] {
        let f = gaussian(g);
        let r = amalgam_norm(&f, Exponent::Finite(2.0), Exponent::Finite(1.0), &poly(1.0)).unwrap();
        assert!((r.global - G_STAR).abs() < 1e-6, "m={} {}", g.per_cell(), r.global);
    }
}

#[test]
fn gaussian_a_norm_matches_a_star() {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    for g in [grid(), grid().refined()] {
        let total = a_norm(&gaussian(g), &s).unwrap().total;
        assert!((total - A_STAR).abs() < 1e-5, "m={} {total}", g.per_cell());
    }
}
