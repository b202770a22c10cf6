use rayon::prelude::*;

use crate::amalgam::{amalgam_norm, Exponent};
use crate::error::{AmalgamError, Result};
use crate::funcrep::SampledFunction;
use crate::scalar::Real;
use crate::space_a::{a_norm, algebra_chain_check, module_check, SpaceSpec};
use crate::weights::WeightSpec;

use super::{at_two_resolutions, Case, Run, SuiteReport, EXACT_SLACK};

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// Collects per-pair cases, turning window overflow of `f ∗ g` into a note.
fn pairwise<T: Real>(
    inputs: &[SampledFunction<T>],
    check: impl Fn(&SampledFunction<T>, &SampledFunction<T>) -> Result<Case> + Sync,
) -> Result<Run> {
    let outcomes = ordered_pairs(inputs.len())
        .into_par_iter()
        .map(|(i, j)| (i, j, check(&inputs[i], &inputs[j])))
        .collect::<Vec<_>>();
    let mut run = Run::new();
    for (i, j, outcome) in outcomes {
        match outcome {
            Ok(case) => run.cases.push(case),
            Err(AmalgamError::WindowOverflow { lost }) => run.notes.push(format!(
                "{} * {} skipped: convolution leaves the window (lost {lost:.3e})",
                inputs[i].label(),
                inputs[j].label()
            )),
            Err(e) => return Err(e),
        }
    }
    Ok(run)
}

/// Submultiplicativity chain of the A-norm over all ordered pairs of the
/// corpus, for every space.
pub fn algebra_suite<T: Real>(corpus: &[SampledFunction<T>], specs: &[SpaceSpec]) -> Result<SuiteReport> {
    let refs: Vec<&SampledFunction<T>> = corpus.iter().collect();
    at_two_resolutions("algebra", &refs, |inputs| {
        let mut run = Run::new();
        for s in specs {
            let part = pairwise(inputs, |f, g| {
                let report = algebra_chain_check(f, g, s)?;
                let mut case = Case::new(format!("{} * {} in {s}", f.label(), g.label()))
                    .input("f", f.label())
                    .input("g", g.label())
                    .input("space", s)
                    .measure("c_empirical", report.c_empirical)
                    .bound("c_analytic", report.c_analytic);
                for link in &report.links {
                    case = case.measure(&link.name, link.lhs).bound(&link.name, link.rhs).require(link.pass);
                }
                Ok(case)
            })?;
            run.cases.extend(part.cases);
            run.notes.extend(part.notes);
        }
        Ok(run)
    })
}

/// `max_n ∫_{Q_n} |f| ≤ ‖f‖_1 ≤ ‖f‖_{1,1,w1} ≤ ‖f‖_{p,1,w1} ≤ ‖f‖_A` for every
/// element of the corpus.
pub fn bf_chain<T: Real>(corpus: &[SampledFunction<T>], s: &SpaceSpec) -> Result<SuiteReport> {
    let refs: Vec<&SampledFunction<T>> = corpus.iter().collect();
    let one = Exponent::Finite(1.0);
    at_two_resolutions("bf", &refs, |inputs| {
        let cases = inputs
            .par_iter()
            .map(|f| {
                let cell_max = f
                    .grid()
                    .cells()
                    .map(|n| f.cell_integral(n, |z, _| z.norm()))
                    .fold(T::zero(), |a, b| a.max(b))
                    .as_f64();
                let l1 = amalgam_norm(f, one, one, &WeightSpec::unit())?.global.as_f64();
                let l11 = amalgam_norm(f, one, one, s.theta1())?.global.as_f64();
                let a = a_norm(f, s)?;
                let lp1 = a.part_time.global.as_f64();
                Ok(Case::new(format!("{} in {s}", f.label()))
                    .input("f", f.label())
                    .input("space", s)
                    .require_le("cell_max", cell_max, l1, EXACT_SLACK)
                    .require_le("l1", l1, l11, EXACT_SLACK)
                    .require_le("l11_w1", l11, lp1, EXACT_SLACK)
                    .require_le("lp1_w1", lp1, a.total.as_f64(), EXACT_SLACK))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut run = Run::new();
        run.cases = cases;
        Ok(run)
    })
}

/// `‖f∗g‖_A ≤ K ‖f‖_A ‖g‖_{1,w0}` over all ordered pairs of the corpus.
pub fn module_suite<T: Real>(corpus: &[SampledFunction<T>], s: &SpaceSpec) -> Result<SuiteReport> {
    let refs: Vec<&SampledFunction<T>> = corpus.iter().collect();
    at_two_resolutions("module", &refs, |inputs| {
        pairwise(inputs, |f, g| {
            let report = module_check(f, g, s)?;
            Ok(Case::new(format!("{} * {} in {s}", f.label(), g.label()))
                .input("f", f.label())
                .input("g", g.label())
                .input("space", s)
                .measure("c_empirical", report.c_empirical)
                .measure("k", report.k)
                .require_le("ratio", report.ratio, report.k_analytic, 0.0)
                .require(report.pass))
        })
    })
}
