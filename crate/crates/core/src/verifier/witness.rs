use crate::amalgam::{amalgam_norm, weighted_lp_norm, Exponent};
use crate::error::{AmalgamError, Result};
use crate::funcrep::{make_bump, FunctionSpec, SampledFunction};
use crate::scalar::Real;
use crate::space_a::{a_norm, SpaceSpec, INEQUALITY_SLACK};
use crate::spectral::translate;
use crate::weights::{dominates, ratio_vanishes, WeightSpec, DEFAULT_CEILING};

use super::{at_two_resolutions, pairing, Case, Run, SuiteReport, EXACT_SLACK};

/// Smallest admissible `w(t)/w1(t)` on the sweep for weights without a closed form.
pub const WITNESS_DELTA0: f64 = 1e-3;

/// Checks the normalized translates `f_n = w1(t_n)^{-1} T_{t_n} f`: bounded in
/// `A`, vaguely decaying against `k = bump(0, 1)`, and bounded below in
/// `(L^p_w, ℓ^1)`.
pub fn noncompactness_witness<T: Real>(
    f: &SampledFunction<T>,
    theta: &WeightSpec,
    s: &SpaceSpec,
    ts: &[f64],
) -> Result<SuiteReport> {
    let theta1 = s.theta1();
    let probes: Vec<f64> = (-1000..=1000).map(f64::from).collect();
    let dom = dominates(theta, theta1, &probes, DEFAULT_CEILING)?;
    if !dom.holds {
        return Err(AmalgamError::HypothesisViolation(format!(
            "{theta} is not dominated by {theta1}"
        )));
    }
    let ratio_at = |t: f64| -> Result<f64> { Ok((theta.ln_eval(t)? - theta1.ln_eval(t)?).exp()) };
    let delta0 = ts
        .iter()
        .map(|&t| ratio_at(t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let vanishes = match ratio_vanishes(theta, theta1) {
        Some(v) => v,
        None => delta0 < WITNESS_DELTA0,
    };
    if vanishes {
        return Err(AmalgamError::HypothesisViolation(format!(
            "{theta}/{theta1} tends to zero; normalized translates may converge in norm and the \
             never-compact argument does not apply"
        )));
    }
    let c1 = dom.constant.unwrap_or(1.0);
    let p = s.p_exp();
    let one = Exponent::Finite(1.0);
    at_two_resolutions("noncompact", &[f], |inputs| {
        let f = &inputs[0];
        let k = make_bump::<T>(0.0, 1.0, f.grid())?;
        let k_norm = weighted_lp_norm(&k, p.conjugate(), theta1)?.as_f64();
        let base = a_norm(f, s)?.total.as_f64();
        let mut run = Run::new();
        let mut pairings = Vec::new();
        let mut floors = Vec::new();
        for &t in ts {
            let tf = match translate(f, t) {
                Ok(v) => v,
                Err(AmalgamError::WindowOverflow { .. }) => {
                    run.notes.push(format!("t = {t} clipped: translate leaves the window"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let w = theta1.eval(t)?;
            let fn_ = tf.scale_real(T::lit(1.0 / w));
            let bounded = a_norm(&fn_, s)?.total.as_f64();
            let pair = pairing(&fn_, &k)?.norm().as_f64();
            let low = amalgam_norm(&fn_, p, one, theta)?.global.as_f64();
            pairings.push(pair);
            floors.push(low);
            run.cases.push(
                Case::new(format!("{} t={t}", f.label()))
                    .input("f", f.label())
                    .input("t", t)
                    .input("theta", theta)
                    .input("space", s)
                    .require_le("bounded", bounded, base, EXACT_SLACK)
                    .require_le("pairing", pair, c1 * k_norm * base / w, INEQUALITY_SLACK)
                    .measure("norm_theta", low),
            );
        }
        if ts.iter().any(|&t| t.abs() > 0.0) && pairings.len() < ts.len() {
            run.notes.push(format!(
                "sweep capped at {} of {} points by the window",
                pairings.len(),
                ts.len()
            ));
        }
        let decreasing = pairings.windows(2).all(|w| w[1] < w[0]);
        run.cases.push(
            Case::new(format!("{} vague decay", f.label()))
                .measure("first", pairings.first().copied().unwrap_or(0.0))
                .measure("last", pairings.last().copied().unwrap_or(0.0))
                .require(decreasing),
        );
        let floor = floors.first().copied().unwrap_or(0.0) / 2.0;
        let lowest = floors.iter().copied().fold(f64::INFINITY, f64::min);
        run.cases.push(
            Case::new(format!("{} norm floor", f.label()))
                .measure("min_norm", lowest)
                .bound("floor", floor)
                .measure("delta0", delta0)
                .require(lowest >= floor && floor > 0.0),
        );
        Ok(run)
    })
}

fn compactly_supported<T: Real>(k: &SampledFunction<T>) -> bool {
    match k.origin() {
        Some(FunctionSpec::Bump { .. }) | Some(FunctionSpec::Indicator { .. }) | Some(FunctionSpec::Zero) => true,
        _ => {
            let g = k.grid();
            let zero = |n: i64| g.cell_range(n).all(|i| k.value(i).norm() == T::zero());
            zero(g.cells().start) && zero(g.cells().end - 1)
        }
    }
}

/// Pairings `∫ f_n k` with the Hölder bound `‖k‖_{p',w1} ‖f_n‖_{p,w1}`.
pub fn vague_convergence<T: Real>(fs: &[SampledFunction<T>], k: &SampledFunction<T>, s: &SpaceSpec) -> Result<SuiteReport> {
    if !compactly_supported(k) {
        return Err(AmalgamError::InvalidArgument(format!(
            "test kernel `{}` must be compactly supported",
            k.label()
        )));
    }
    let mut refs: Vec<&SampledFunction<T>> = vec![k];
    refs.extend(fs.iter());
    let p = s.p_exp();
    at_two_resolutions("vague", &refs, |inputs| {
        let (k, fs) = inputs.split_first().expect("kernel present");
        let k_norm = weighted_lp_norm(k, p.conjugate(), s.theta1())?.as_f64();
        let mut run = Run::new();
        for (n, f) in fs.iter().enumerate() {
            let pair = pairing(f, k)?.norm().as_f64();
            let f_norm = weighted_lp_norm(f, p, s.theta1())?.as_f64();
            run.cases.push(
                Case::new(format!("n={} {}", n + 1, f.label()))
                    .input("f", f.label())
                    .input("k", k.label())
                    .require_le("pairing", pair, k_norm * f_norm, INEQUALITY_SLACK),
            );
        }
        Ok(run)
    })
}
