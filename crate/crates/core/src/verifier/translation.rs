use crate::error::{AmalgamError, Result};
use crate::funcrep::SampledFunction;
use crate::scalar::Real;
use crate::space_a::{a_norm, SpaceSpec};
use crate::spectral::translate;

use super::{at_two_resolutions, Case, Run, SuiteReport, EXACT_SLACK};

/// `‖T_y f‖_A ≤ w1(y) ‖f‖_A` along the sweep, and a positive floor for
/// `‖T_y f‖_A / w1(y)`. Translates leaving the window are clipped from the sweep.
pub fn translation_bounds<T: Real>(f: &SampledFunction<T>, s: &SpaceSpec, ys: &[f64]) -> Result<SuiteReport> {
    at_two_resolutions("translation", &[f], |inputs| {
        let f = &inputs[0];
        let base = a_norm(f, s)?.total.as_f64();
        let mut run = Run::new();
        let mut floor = f64::INFINITY;
        for &y in ys {
            let ty = match translate(f, y) {
                Ok(t) => t,
                Err(AmalgamError::WindowOverflow { .. }) => {
                    run.notes.push(format!("y = {y} clipped: translate leaves the window"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let w = s.theta1().eval(y)?;
            let norm = a_norm(&ty, s)?.total.as_f64();
            floor = floor.min(norm / w);
            let ratio = if base > 0.0 { norm / (w * base) } else { 0.0 };
            run.cases.push(
                Case::new(format!("{} y={y}", f.label()))
                    .input("f", f.label())
                    .input("y", y)
                    .input("space", s)
                    .measure("ratio", ratio)
                    .measure("lower_ratio", norm / w)
                    .require_le("upper", norm, w * base, EXACT_SLACK),
            );
        }
        if floor.is_finite() {
            run.cases.push(
                Case::new(format!("{} lower floor", f.label()))
                    .input("f", f.label())
                    .measure("c1", floor)
                    .require(floor > 0.0),
            );
        }
        Ok(run)
    })
}

/// For each `ε`, the largest grid-aligned `δ ≤ 1` with `‖T_y f - f‖_A < ε`
/// for all `|y| ≤ δ`. Requires `δ ≥ h` and `δ` nondecreasing in `ε`.
pub fn translation_continuity<T: Real>(f: &SampledFunction<T>, s: &SpaceSpec, epsilons: &[f64]) -> Result<SuiteReport> {
    if !f.jumps().is_empty() {
        return Err(AmalgamError::HypothesisViolation(format!(
            "translation continuity is checked on continuous inputs only; `{}` has jumps",
            f.label()
        )));
    }
    if epsilons.is_empty() || epsilons.iter().any(|e| !(*e > 0.0)) {
        return Err(AmalgamError::InvalidArgument("tolerances must be positive".into()));
    }
    at_two_resolutions("continuity", &[f], |inputs| {
        let f = &inputs[0];
        let grid = f.grid();
        let h = 1.0 / grid.per_cell() as f64;
        let diff = |y: f64| -> Result<f64> { Ok(a_norm(&translate(f, y)?.sub(f)?, s)?.total.as_f64()) };
        let top = epsilons.iter().copied().fold(0.0, f64::max);
        let cap = grid.per_cell();
        let mut worst = Vec::new();
        let mut running: f64 = 0.0;
        for j in 1..=cap {
            let y = j as f64 * h;
            running = running.max(diff(y)?.max(diff(-y)?));
            worst.push(running);
            if running >= top {
                break;
            }
        }
        let mut run = Run::new();
        if worst.len() == cap && running < top {
            run.notes.push("scan capped at |y| = 1".to_string());
        }
        run.cases.push(
            Case::new(format!("{} y=0", f.label()))
                .input("f", f.label())
                .measure("difference", diff(0.0)?)
                .require(diff(0.0)? == 0.0),
        );
        let mut deltas = Vec::new();
        for &eps in epsilons {
            let steps = worst.iter().take_while(|&&d| d < eps).count();
            let delta = steps as f64 * h;
            deltas.push((eps, delta));
            run.cases.push(
                Case::new(format!("{} eps={eps}", f.label()))
                    .input("f", f.label())
                    .input("epsilon", eps)
                    .input("space", s)
                    .measure("delta", delta)
                    .bound("delta_min", h)
                    .require(delta >= h),
            );
        }
        let monotone = deltas
            .iter()
            .all(|&(e1, d1)| deltas.iter().all(|&(e2, d2)| !(e1 <= e2) || d1 <= d2));
        run.cases.push(Case::new(format!("{} monotone", f.label())).require(monotone));
        Ok(run)
    })
}
