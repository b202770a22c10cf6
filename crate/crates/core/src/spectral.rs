//! Translation, modulation, Fourier transform and convolution on sampled functions.
//!
//! The transform is the Riemann sum `h Σ f(x_k) e^{-2πi x_k ξ}` evaluated by one
//! FFT of length `N = 2Lm`, which lands exactly on the reciprocal grid
//! `ξ_j = -m/2 + j/(2L)`. Convolution uses the same sum, so the discrete
//! convolution theorem holds up to rounding.

use std::collections::BTreeMap;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{AmalgamError, Result};
use crate::funcrep::{mass_tolerance, GridSpec, SampledFunction};
use crate::scalar::Real;

/// Sampled `f̂` on the reciprocal grid `[-m/2, m/2)` with step `1/(2L)`.
pub type FrequencyFunction<T> = SampledFunction<T>;

/// `T_y f(x) = f(x - y)` for grid-aligned `y`.
pub fn translate<T: Real>(f: &SampledFunction<T>, y: f64) -> Result<SampledFunction<T>> {
    let steps = f.grid().steps_of("translation", y)?;
    let mut out = f.shift(steps)?;
    out.set_origin_translated(f, y);
    Ok(out.with_label(format!("T[{y}]{}", f.label())))
}

/// `M_t f(x) = e^{2πitx} f(x)`.
pub fn modulate<T: Real>(f: &SampledFunction<T>, t: f64) -> SampledFunction<T> {
    if t == 0.0 {
        return f.clone();
    }
    let two_pi_t = T::lit(2.0 * std::f64::consts::PI * t);
    f.map(|z, x| z * Complex::from_polar(T::one(), two_pi_t * x))
        .with_label(format!("M[{t}]{}", f.label()))
}

fn alternate<T: Real>(k: usize, z: Complex<T>) -> Complex<T> {
    if k % 2 == 0 {
        z
    } else {
        -z
    }
}

/// `f̂(ξ) = ∫ f(x) e^{-2πixξ} dx` on the reciprocal grid.
pub fn fourier<T: Real>(f: &SampledFunction<T>) -> FrequencyFunction<T> {
    let grid = f.grid();
    let n = grid.len();
    let half = n / 2;
    let mut buf: Vec<Complex<T>> = f.values().iter().enumerate().map(|(k, &z)| alternate(k, z)).collect();
    FftPlanner::<T>::new().plan_fft_forward(n).process(&mut buf);
    let h = grid.step::<T>();
    // ξ_j x_k = -(j - N/2)/2 + k (j - N/2) / N
    let values = buf
        .into_iter()
        .enumerate()
        .map(|(j, z)| alternate(j + half, z) * h)
        .collect();
    SampledFunction::from_parts(grid.reciprocal(), values, BTreeMap::new(), format!("F{}", f.label()), None)
}

/// Inverse of [`fourier`]: `f(x) = ∫ f̂(ξ) e^{2πixξ} dξ` back on the time grid.
pub fn inverse_fourier<T: Real>(fh: &FrequencyFunction<T>) -> SampledFunction<T> {
    let freq = fh.grid();
    let time = freq.reciprocal();
    let n = freq.len();
    let half = n / 2;
    let mut buf: Vec<Complex<T>> = fh
        .values()
        .iter()
        .enumerate()
        .map(|(j, &z)| alternate(j + half, z))
        .collect();
    FftPlanner::<T>::new().plan_fft_inverse(n).process(&mut buf);
    let dxi = freq.step::<T>();
    let values = buf
        .into_iter()
        .enumerate()
        .map(|(k, z)| alternate(k, z) * dxi)
        .collect();
    SampledFunction::from_parts(time, values, BTreeMap::new(), format!("iF{}", fh.label()), None)
}

/// Zeroes `f̂` outside `[-b, b]` and transforms back. The result has a
/// compactly supported transform.
pub fn band_limit<T: Real>(f: &SampledFunction<T>, b: f64) -> Result<SampledFunction<T>> {
    if !(b > 0.0) {
        return Err(AmalgamError::InvalidArgument(format!("band limit {b} must be positive")));
    }
    let real = f.is_real();
    let fh = fourier(f);
    let freq = fh.grid();
    let bt = T::lit(b);
    let cut = fh.map(|z, xi| if xi.abs() <= bt { z } else { Complex::default() });
    debug_assert_eq!(cut.grid(), freq);
    let mut out = inverse_fourier(&cut);
    if real {
        out = out.map(|z, _| Complex::new(z.re, T::zero()));
    }
    Ok(out.with_label(format!("B[{b}]{}", f.label())))
}

/// `(f ∗ g)(x) = ∫ f(t) g(x - t) dt`, via a zero-padded FFT of length at
/// least `4N`. Fails if the result leaves the window.
pub fn convolve<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>) -> Result<SampledFunction<T>> {
    convolve_impl(f, g, true)
}

/// [`convolve`] restricted to the window without the overflow check, for
/// kernels whose tails cover the whole window (band-limited functions).
pub fn convolve_cropped<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>) -> Result<SampledFunction<T>> {
    convolve_impl(f, g, false)
}

fn convolve_impl<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>, check: bool) -> Result<SampledFunction<T>> {
    let grid = same_grid(f, g)?;
    let n = grid.len();
    let padded = (4 * n).next_power_of_two();
    let mut planner = FftPlanner::<T>::new();
    let forward = planner.plan_fft_forward(padded);
    let inverse = planner.plan_fft_inverse(padded);
    let pad = |s: &SampledFunction<T>| {
        let mut buf = vec![Complex::default(); padded];
        buf[..n].copy_from_slice(s.values());
        buf
    };
    let (mut a, mut b) = (pad(f), pad(g));
    forward.process(&mut a);
    forward.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x = *x * *y;
    }
    inverse.process(&mut a);
    let h = grid.step::<T>();
    let scale = h / T::lit(padded as f64);
    let offset = n / 2;
    let mut total = T::zero();
    let mut lost = T::zero();
    for (i, z) in a.iter().enumerate() {
        let mag = z.norm() * scale;
        total = total + mag;
        if i < offset || i >= offset + n {
            lost = lost + mag;
        }
    }
    if check && lost > mass_tolerance::<T>() * total.max(T::one()) {
        return Err(AmalgamError::WindowOverflow { lost: lost.as_f64() });
    }
    let real = f.is_real() && g.is_real();
    let values = a[offset..offset + n]
        .iter()
        .map(|&z| {
            let v = z * scale;
            if real {
                Complex::new(v.re, T::zero())
            } else {
                v
            }
        })
        .collect();
    Ok(SampledFunction::from_parts(
        grid,
        values,
        BTreeMap::new(),
        format!("{}*{}", f.label(), g.label()),
        None,
    ))
}

/// Trapezoid quadrature of `t ↦ f(t) g(x - t)` over the sample points of `f`
/// at each requested `x`; `g` is interpolated linearly off the grid.
pub fn direct_convolve<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>, points: &[T]) -> Result<Vec<Complex<T>>> {
    let grid = same_grid(f, g)?;
    let h = grid.step::<T>();
    let half = T::lit(0.5);
    Ok(points
        .iter()
        .map(|&x| {
            let mut acc = Complex::default();
            for (k, &fz) in f.values().iter().enumerate() {
                let term = fz * g.eval_at(x - grid.x::<T>(k));
                acc = acc + if k == 0 { term * half } else { term };
            }
            acc * h
        })
        .collect())
}

fn same_grid<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>) -> Result<GridSpec> {
    if f.grid() != g.grid() {
        return Err(AmalgamError::InvalidArgument(format!(
            "grid mismatch: {} vs {}",
            f.grid(),
            g.grid()
        )));
    }
    Ok(f.grid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{amalgam_norm, weighted_lp_norm, Exponent};
    use crate::funcrep::{make_bump, make_gaussian, make_indicator};
    use crate::weights::WeightSpec;

    fn grid() -> GridSpec {
        GridSpec::new(16, 256).unwrap()
    }

    fn max_err(a: &[Complex<f64>], b: impl Fn(usize) -> Complex<f64>) -> f64 {
        a.iter().enumerate().map(|(k, z)| (z - b(k)).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn translate_examples() {
        let g = grid();
        let f = make_indicator::<f64>(0.0, 1.0, g).unwrap();
        let t = translate(&f, 2.0).unwrap();
        let expected = make_indicator::<f64>(2.0, 3.0, g).unwrap();
        assert_eq!(t.values(), expected.values());
        assert_eq!(t.jumps(), expected.jumps());
        assert_eq!(translate(&f, 0.0).unwrap().values(), f.values());
        let gauss = make_gaussian::<f64>(g).unwrap();
        assert!(matches!(translate(&gauss, 20.0), Err(AmalgamError::WindowOverflow { .. })));
        assert!(matches!(translate(&gauss, 0.001), Err(AmalgamError::Misaligned { .. })));
        // translated generators still refine exactly
        let shifted = translate(&gauss, 1.5).unwrap().refine().unwrap();
        let direct = crate::funcrep::make_gaussian_at::<f64>(1.5, 1.0, g.refined()).unwrap();
        assert_eq!(shifted.values(), direct.values());
    }

    #[test]
    fn modulate_examples() {
        let g = grid();
        let f = make_gaussian::<f64>(g).unwrap();
        let mf = modulate(&f, 3.25);
        for (a, b) in mf.values().iter().zip(f.values()) {
            assert!((a.norm() - b.norm()).abs() <= 1e-15 * b.norm().max(1e-300));
        }
        assert_eq!(modulate(&f, 0.0).values(), f.values());
        let w = WeightSpec::polynomial(1.0).unwrap();
        let p = Exponent::finite(2.0);
        let a = amalgam_norm(&mf, p, Exponent::finite(1.0), &w).unwrap().global;
        let b = amalgam_norm(&f, p, Exponent::finite(1.0), &w).unwrap().global;
        assert!((a - b).abs() <= 1e-14 * b);
    }

    #[test]
    fn gaussian_is_self_dual() {
        let f = make_gaussian::<f64>(grid()).unwrap();
        let fh = fourier(&f);
        let fg = fh.grid();
        assert_eq!((fg.half_width(), fg.per_cell()), (128, 32));
        let err = max_err(fh.values(), |j| {
            let xi: f64 = fg.x(j);
            Complex::new((-std::f64::consts::PI * xi * xi).exp(), 0.0)
        });
        assert!(err < 1e-8, "{err}");
        let back = inverse_fourier(&fh);
        let err = max_err(back.values(), |k| f.values()[k]);
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn indicator_transform_is_sinc() {
        let f = make_indicator::<f64>(0.0, 1.0, grid()).unwrap();
        let fh = fourier(&f);
        let fg = fh.grid();
        let err = fh
            .values()
            .iter()
            .enumerate()
            .map(|(j, z)| {
                let xi: f64 = fg.x(j);
                let sinc = if xi == 0.0 {
                    1.0
                } else {
                    ((std::f64::consts::PI * xi).sin() / (std::f64::consts::PI * xi)).abs()
                };
                (z.norm() - sinc).abs()
            })
            .fold(0.0, f64::max);
        assert!(err < 2e-3, "{err}");
    }

    #[test]
    fn translation_intertwines_with_modulation() {
        let f = make_gaussian::<f64>(grid()).unwrap();
        let y = 2.5;
        let lhs = fourier(&translate(&f, y).unwrap());
        let rhs = modulate(&fourier(&f), -y);
        let err = max_err(lhs.values(), |j| rhs.values()[j]);
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn convolution_examples() {
        let g = grid();
        let chi = make_indicator::<f64>(0.0, 1.0, g).unwrap();
        let hat = convolve(&chi, &chi).unwrap();
        // Riemann convolution of two unit steps: the hat evaluated one step ahead
        let err = max_err(hat.values(), |k| {
            let x: f64 = g.x::<f64>(k) + g.step::<f64>();
            Complex::new((1.0 - (x - 1.0).abs()).max(0.0), 0.0)
        });
        assert!(err < 1e-10, "{err}");
        let gauss = make_gaussian::<f64>(g).unwrap();
        let gg = convolve(&gauss, &gauss).unwrap();
        let err = max_err(gg.values(), |k| {
            let x: f64 = g.x(k);
            Complex::new((-std::f64::consts::PI * x * x / 2.0).exp() / 2f64.sqrt(), 0.0)
        });
        assert!(err < 1e-8, "{err}");
        assert!(gg.values().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn direct_convolution_agrees() {
        let g = grid();
        let pts: Vec<f64> = (0..16).map(|i| -2.0 + 0.25 * i as f64).collect();
        let chi = make_indicator::<f64>(0.0, 1.0, g).unwrap();
        let gauss = make_gaussian::<f64>(g).unwrap();
        let bump = make_bump::<f64>(0.0, 2.0 / 256.0, g).unwrap();
        for (f, k, tol) in [(&chi, &chi, 1e-8), (&gauss, &bump, 1e-6), (&gauss, &gauss, 1e-8)] {
            let fast = convolve(f, k).unwrap();
            let slow = direct_convolve(f, k, &pts).unwrap();
            for (x, v) in pts.iter().zip(&slow) {
                let idx = g.index_of("x", *x).unwrap();
                assert!((fast.values()[idx] - v).norm() < tol);
            }
        }
    }

    #[test]
    fn convolution_overflow() {
        let g = GridSpec::new(4, 16).unwrap();
        let a = make_indicator::<f64>(2.0, 4.0, g).unwrap();
        assert!(matches!(convolve(&a, &a), Err(AmalgamError::WindowOverflow { .. })));
    }

    #[test]
    fn plancherel_on_gaussian() {
        let f = make_gaussian::<f64>(grid()).unwrap();
        let w = WeightSpec::unit();
        let two = Exponent::finite(2.0);
        let a = weighted_lp_norm(&f, two, &w).unwrap();
        let b = weighted_lp_norm(&fourier(&f), two, &w).unwrap();
        assert!((a - b).abs() < 1e-7 * a);
    }

    #[test]
    fn band_limit_removes_high_frequencies() {
        let f = make_indicator::<f64>(0.0, 1.0, grid()).unwrap();
        let b = band_limit(&f, 4.0).unwrap();
        let bh = fourier(&b);
        for (j, z) in bh.values().iter().enumerate() {
            let xi: f64 = bh.grid().x(j);
            if xi.abs() > 4.0 {
                assert!(z.norm() < 1e-12);
            }
        }
        assert!(b.is_real());
    }
}
