use rayon::prelude::*;

use crate::decide::{decide_embedding, Relation};
use crate::error::{AmalgamError, Result};
use crate::funcrep::SampledFunction;
use crate::scalar::Real;
use crate::space_a::{a_norm, SpaceSpec, INEQUALITY_SLACK};
use crate::spectral::translate;

use super::{at_two_resolutions, Case, Run, SuiteReport};

/// Growth factor the divergence scan must exceed.
pub const DIVERGENCE_FACTOR: f64 = 10.0;

/// `sup_f ‖f‖_dst / ‖f‖_src` over the corpus against the constant of the
/// inclusion rule that applies.
pub fn embedding_constant<T: Real>(src: &SpaceSpec, dst: &SpaceSpec, corpus: &[SampledFunction<T>]) -> Result<SuiteReport> {
    let verdict = decide_embedding(src, dst)?;
    if !matches!(verdict.relation, Relation::Embeds | Relation::Equal) {
        return Err(AmalgamError::HypothesisViolation(format!(
            "no inclusion rule applies to {src} -> {dst} ({})",
            verdict.rule
        )));
    }
    let bound = verdict.constant_hint.unwrap_or(1.0);
    let refs: Vec<&SampledFunction<T>> = corpus.iter().collect();
    at_two_resolutions("embedding", &refs, |inputs| {
        let cases = inputs
            .par_iter()
            .map(|f| {
                let a = a_norm(f, src)?.total.as_f64();
                let b = a_norm(f, dst)?.total.as_f64();
                let ratio = if b == 0.0 { 0.0 } else { b / a };
                Ok(Case::new(format!("{} {}", f.label(), verdict.rule))
                    .input("f", f.label())
                    .input("src", src)
                    .input("dst", dst)
                    .require_le("ratio", ratio, bound, INEQUALITY_SLACK))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut run = Run::new();
        run.cases = cases;
        Ok(run)
    })
}

/// Ratio `‖T_t f‖_dst / ‖T_t f‖_src` along the translation sweep; the last
/// ratio must exceed the first by [`DIVERGENCE_FACTOR`].
pub fn divergence_scan<T: Real>(src: &SpaceSpec, dst: &SpaceSpec, f: &SampledFunction<T>, ts: &[f64]) -> Result<SuiteReport> {
    at_two_resolutions("embedding-divergence", &[f], |inputs| {
        let f = &inputs[0];
        let mut run = Run::new();
        let mut ratios = Vec::new();
        for &t in ts {
            let tf = match translate(f, t) {
                Ok(v) => v,
                Err(AmalgamError::WindowOverflow { .. }) => {
                    run.notes.push(format!("t = {t} clipped: translate leaves the window"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let ratio = a_norm(&tf, dst)?.total.as_f64() / a_norm(&tf, src)?.total.as_f64();
            ratios.push(ratio);
            run.cases.push(
                Case::new(format!("{} t={t}", f.label()))
                    .input("t", t)
                    .measure("ratio", ratio),
            );
        }
        let growth = match (ratios.first(), ratios.last()) {
            (Some(a), Some(b)) if ratios.len() > 1 => b / a,
            _ => 0.0,
        };
        run.cases.push(
            Case::new(format!("{} growth", f.label()))
                .input("src", src)
                .input("dst", dst)
                .measure("growth", growth)
                .bound("growth_min", DIVERGENCE_FACTOR)
                .require(growth > DIVERGENCE_FACTOR),
        );
        Ok(run)
    })
}
