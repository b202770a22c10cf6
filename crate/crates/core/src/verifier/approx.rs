use crate::amalgam::{amalgam_norm, Exponent};
use crate::error::{AmalgamError, Result};
use crate::funcrep::{make_bump, SampledFunction};
use crate::scalar::Real;
use crate::space_a::{a_norm, convolution_constant, SpaceSpec, INEQUALITY_SLACK};
use crate::spectral::{band_limit, convolve};

use super::{at_two_resolutions, Case, Run, SuiteReport, EXACT_SLACK};

/// Target for `‖g_ρ ∗ f - f‖_A` relative to `‖f‖_A` at the smallest radius.
pub const FINAL_FRACTION: f64 = 0.02;
/// Target for `‖g - h‖_{1,w1}` in the band-limiting stage.
pub const BAND_TARGET: f64 = 0.01;

fn touches_edges<T: Real>(f: &SampledFunction<T>) -> bool {
    let n = f.grid().len();
    f.value(0).norm() > T::zero() || f.left_limit(n).norm() > T::zero()
}

/// Bumps `g_ρ = bump(0, ρ)` over the decreasing radii must approximate `f`
/// in the A-norm; the last one is then band-limited to `h` with
/// `‖g - h‖_{1,w1} < 0.01` and the triangle chain for `h ∗ f - f` is checked.
pub fn approximate_identity<T: Real>(f: &SampledFunction<T>, s: &SpaceSpec, radii: &[f64]) -> Result<SuiteReport> {
    if radii.is_empty() {
        return Err(AmalgamError::InvalidArgument("no radii given".into()));
    }
    if radii.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(AmalgamError::InvalidArgument("radii must be strictly decreasing".into()));
    }
    at_two_resolutions("approxid", &[f], |inputs| {
        let f = &inputs[0];
        let mut run = Run::new();
        let edge = touches_edges(f);
        let l = f.grid().half_width();
        // functions reaching the window edge are convolved on a doubled window
        // and compared on the inner half of the original one
        let work = if edge { f.widen(2 * l)? } else { f.clone() };
        let inner = l as f64 / 2.0;
        if edge {
            run.notes.push(format!(
                "`{}` reaches the window edge: errors measured on [-{inner}, {inner})",
                f.label()
            ));
        }
        let base = a_norm(f, s)?.total.as_f64();
        let error_of = |g: &SampledFunction<T>| -> Result<f64> {
            let mut diff = convolve(g, &work)?.sub(&work)?;
            if edge {
                diff = diff.restrict(-inner, inner)?;
            }
            Ok(a_norm(&diff, s)?.total.as_f64())
        };
        let mut errors = Vec::new();
        for &rho in radii {
            let g = make_bump::<T>(0.0, rho, work.grid())?;
            let e = error_of(&g)?;
            errors.push(e);
            run.cases.push(
                Case::new(format!("{} rho={rho}", f.label()))
                    .input("f", f.label())
                    .input("rho", rho)
                    .input("space", s)
                    .measure("error", e),
            );
        }
        let monotone = errors.windows(2).all(|w| w[1] <= w[0] * (1.0 + EXACT_SLACK));
        run.cases.push(Case::new(format!("{} monotone", f.label())).require(monotone));
        let last = *errors.last().expect("radii nonempty");
        run.cases.push(
            Case::new(format!("{} final", f.label())).require_le("final_error", last, FINAL_FRACTION * base, 0.0),
        );
        if edge {
            run.notes.push("band-limiting stage skipped for edge-touching input".to_string());
            return Ok(run);
        }

        let rho = *radii.last().expect("radii nonempty");
        let grid = f.grid();
        let g = make_bump::<T>(0.0, rho, grid)?;
        let one = Exponent::Finite(1.0);
        let limit = grid.per_cell() / 2;
        let mut found = None;
        for b in 1..=limit {
            let h = band_limit(&g, b as f64)?;
            let d = amalgam_norm(&g.sub(&h)?, one, one, s.theta1())?.global.as_f64();
            if d < BAND_TARGET {
                found = Some((b, h, d));
                break;
            }
        }
        let Some((b, h, d)) = found else {
            run.notes.push(format!(
                "inconclusive: ‖g - h‖ stayed above {BAND_TARGET} for band limits up to {limit}"
            ));
            run.cases.push(Case::new(format!("{} band limit", f.label())).measure("inconclusive", 1.0));
            return Ok(run);
        };
        // band-limited kernels fill the window
        let wide = 2 * grid.half_width();
        let (f2, g2, h2) = (f.widen(wide)?, g.widen(wide)?, h.widen(wide)?);
        let base2 = a_norm(&f2, s)?.total.as_f64();
        let e_g = a_norm(&convolve(&g2, &f2)?.sub(&f2)?, s)?.total.as_f64();
        let e_h = a_norm(&convolve(&h2, &f2)?.sub(&f2)?, s)?.total.as_f64();
        let e_hg = a_norm(&convolve(&h2.sub(&g2)?, &f2)?, s)?.total.as_f64();
        let c = convolution_constant(s.p()).max(1.0);
        run.cases.push(
            Case::new(format!("{} band limit", f.label()))
                .input("f", f.label())
                .input("rho", rho)
                .measure("band", b as f64)
                .require_le("kernel_gap", d, BAND_TARGET, 0.0)
                .require_le("triangle", e_h, e_hg + e_g, INEQUALITY_SLACK)
                .require_le("young", e_hg, c * d * base2, INEQUALITY_SLACK),
        );
        Ok(run)
    })
}
