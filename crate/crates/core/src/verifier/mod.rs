//! Numerical suites that check the norm inequalities of the algebra on
//! sampled inputs.
//!
//! Every suite runs twice: on the given inputs and on their refinement at
//! twice the resolution. The report keeps the cases of the first run and
//! records the largest relative change of any measured quantity together with
//! the verdict of the refined run.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::funcrep::SampledFunction;
use crate::scalar::Real;

mod approx;
mod chains;
mod embedding;
mod translation;
mod witness;

pub use approx::approximate_identity;
pub use chains::{algebra_suite, bf_chain, module_suite};
pub use embedding::{divergence_scan, embedding_constant};
pub use translation::{translation_bounds, translation_continuity};
pub use witness::{noncompactness_witness, vague_convergence, WITNESS_DELTA0};

/// Slack for identities that are exact up to rounding.
pub const EXACT_SLACK: f64 = 1e-9;

/// One checked instance within a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub label: String,
    pub inputs: BTreeMap<String, String>,
    pub measured: BTreeMap<String, f64>,
    pub bound: BTreeMap<String, f64>,
    pub pass: bool,
}

impl Case {
    pub fn new(label: impl Into<String>) -> Self {
        Case {
            label: label.into(),
            inputs: BTreeMap::new(),
            measured: BTreeMap::new(),
            bound: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn measure(mut self, key: &str, value: f64) -> Self {
        self.measured.insert(key.to_string(), value);
        self
    }

    pub fn bound(mut self, key: &str, value: f64) -> Self {
        self.bound.insert(key.to_string(), value);
        self
    }

    /// Requires `measured ≤ bound · (1 + slack)`; both are recorded.
    pub fn require_le(self, key: &str, measured: f64, bound: f64, slack: f64) -> Self {
        let ok = measured <= bound * (1.0 + slack);
        let mut c = self.measure(key, measured).bound(key, bound);
        c.pass &= ok;
        c
    }

    pub fn require(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub theorem_tag: String,
    pub cases: Vec<Case>,
    pub overall_pass: bool,
    /// Largest relative change of a measured value under one refinement.
    pub grid_refinement_delta: f64,
    /// Verdict of the same suite on the refined inputs.
    pub refined_pass: bool,
    pub notes: Vec<String>,
}

impl SuiteReport {
    /// Whether the suite passes at both resolutions.
    pub fn stable_pass(&self) -> bool {
        self.overall_pass && self.refined_pass
    }
}

/// Cases and notes from one resolution.
pub(crate) struct Run {
    pub cases: Vec<Case>,
    pub notes: Vec<String>,
}

impl Run {
    pub fn new() -> Self {
        Run {
            cases: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

fn relative_change(a: f64, b: f64) -> f64 {
    if a == b || (!a.is_finite() && !b.is_finite()) {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Assembles a report from a run and its refined counterpart.
pub(crate) fn finish(tag: &str, coarse: Run, fine: Run) -> SuiteReport {
    let mut delta: f64 = 0.0;
    for (a, b) in coarse.cases.iter().zip(&fine.cases) {
        for (key, &va) in &a.measured {
            if let Some(&vb) = b.measured.get(key) {
                delta = delta.max(relative_change(va, vb));
            }
        }
    }
    let mut notes = coarse.notes;
    if coarse.cases.len() != fine.cases.len() {
        notes.push(format!(
            "refined run produced {} cases against {}",
            fine.cases.len(),
            coarse.cases.len()
        ));
    }
    SuiteReport {
        theorem_tag: tag.to_string(),
        overall_pass: coarse.cases.iter().all(|c| c.pass),
        refined_pass: fine.pass(),
        cases: coarse.cases,
        grid_refinement_delta: delta,
        notes,
    }
}

/// Runs `suite` on the inputs and on their refinement.
pub(crate) fn at_two_resolutions<T: Real>(
    tag: &str,
    inputs: &[&SampledFunction<T>],
    suite: impl Fn(&[SampledFunction<T>]) -> Result<Run>,
) -> Result<SuiteReport> {
    let coarse: Vec<SampledFunction<T>> = inputs.iter().map(|f| (*f).clone()).collect();
    let fine: Vec<SampledFunction<T>> = inputs.iter().map(|f| f.refine()).collect::<Result<_>>()?;
    let a = suite(&coarse)?;
    let b = suite(&fine)?;
    Ok(finish(tag, a, b))
}

/// `∫ f k` by the trapezoid rule.
pub fn pairing<T: Real>(f: &SampledFunction<T>, k: &SampledFunction<T>) -> Result<Complex<T>> {
    f.mul(k)?.quadrature(crate::funcrep::Region::Window)
}
