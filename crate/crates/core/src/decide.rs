//! Symbolic embedding and compactness verdicts for closed-form weights.
//!
//! The engine only answers when a known sufficient condition holds verbatim;
//! everything else is `no_rule`.

use serde::{Deserialize, Serialize};

use crate::error::{AmalgamError, Result};
use crate::space_a::SpaceSpec;
use crate::weights::{dominates, dominates_exact, ratio_vanishes, WeightSpec, DEFAULT_CEILING};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Embeds,
    Equal,
    NeverCompactEmbedding,
    NoRule,
}

/// One checked hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub hypothesis: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub relation: Relation,
    pub rule: String,
    pub trace: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_hint: Option<f64>,
    /// Set when the embedding is known to fail, not merely undecided.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub definite_negative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub mod rules {
    pub const EQUAL: &str = "equal:equivalent-weights";
    pub const GENERAL: &str = "inclusion:general";
    pub const WEIGHTS: &str = "inclusion:weights";
    pub const EXPONENTS_PR: &str = "inclusion:exponents-p-r";
    pub const EXPONENTS_PQ: &str = "inclusion:exponents-p-q";
    pub const TIME_WEIGHT_QR: &str = "inclusion:time-weight-q-r";
    pub const EXPONENTS_QR: &str = "inclusion:exponents-q-r";
    pub const WEIGHT_CHARACTERIZATION: &str = "negative:time-weight-characterization";
    pub const INTO_AMALGAM: &str = "never-compact:into-amalgam";
    pub const INTO_AMALGAM_DUAL: &str = "never-compact:into-amalgam-dual";
    pub const SAME_FREQUENCY_WEIGHT: &str = "never-compact:same-frequency-weight";
    pub const CHAIN_I: &str = "never-compact:chain-i";
    pub const CHAIN_II: &str = "never-compact:chain-ii";
    pub const NONE: &str = "none";
}

fn closed(w: &WeightSpec) -> Result<()> {
    if w.closed_form().is_some() {
        Ok(())
    } else {
        Err(AmalgamError::Undecidable(format!(
            "weight {w} is tabulated; dominance cannot be decided exactly"
        )))
    }
}

fn prec(a: &WeightSpec, b: &WeightSpec) -> bool {
    dominates_exact(a, b).unwrap_or(false)
}

fn equiv(a: &WeightSpec, b: &WeightSpec) -> bool {
    prec(a, b) && prec(b, a)
}

fn constant(a: &WeightSpec, b: &WeightSpec) -> f64 {
    dominates(a, b, &[0.0], DEFAULT_CEILING)
        .ok()
        .and_then(|v| v.constant)
        .unwrap_or(f64::INFINITY)
}

/// Accumulates hypotheses until the first failure.
struct Trace(Vec<Check>);

impl Trace {
    fn new() -> Self {
        Trace(Vec::new())
    }

    /// Records the hypothesis; returns whether every hypothesis so far holds.
    fn check(&mut self, hypothesis: String, holds: bool) -> bool {
        if self.0.last().is_some_and(|c| !c.holds) {
            return false;
        }
        self.0.push(Check { hypothesis, holds });
        holds
    }

    fn ok(&self) -> bool {
        self.0.iter().all(|c| c.holds)
    }
}

fn verdict(relation: Relation, rule: &str, trace: Trace) -> Verdict {
    Verdict {
        relation,
        rule: rule.to_string(),
        trace: trace.0,
        constant_hint: None,
        definite_negative: false,
        note: None,
    }
}

/// Decides whether `src` embeds continuously into `dst`.
pub fn decide_embedding(src: &SpaceSpec, dst: &SpaceSpec) -> Result<Verdict> {
    for w in [src.theta1(), src.theta2(), dst.theta1(), dst.theta2()] {
        closed(w)?;
    }
    let (w1, w2, w3, w4) = (src.theta1(), src.theta2(), dst.theta1(), dst.theta2());
    let hint = constant(w3, w1).max(constant(w4, w2));

    let mut eq = Trace::new();
    eq.check(format!("p: {} = {}", src.p(), dst.p()), src.p() == dst.p());
    eq.check(format!("q: {} = {}", src.q(), dst.q()), src.q() == dst.q());
    eq.check(format!("r: {} = {}", src.r(), dst.r()), src.r() == dst.r());
    eq.check(format!("{w1} ≈ {w3}"), equiv(w1, w3));
    eq.check(format!("{w2} ≈ {w4}"), equiv(w2, w4));
    if eq.ok() {
        let mut v = verdict(Relation::Equal, rules::EQUAL, eq);
        v.constant_hint = Some(hint);
        return Ok(v);
    }

    let mut gen = Trace::new();
    gen.check(format!("p_dst ≤ p_src: {} ≤ {}", dst.p(), src.p()), dst.p() <= src.p());
    gen.check(format!("q_dst ≤ q_src: {} ≤ {}", dst.q(), src.q()), dst.q() <= src.q());
    gen.check(format!("r_src ≤ r_dst: {} ≤ {}", src.r(), dst.r()), src.r() <= dst.r());
    gen.check(format!("{w3} ≺ {w1}"), prec(w3, w1));
    gen.check(format!("{w4} ≺ {w2}"), prec(w4, w2));
    if gen.ok() {
        let same_p = src.p() == dst.p();
        let same_q = src.q() == dst.q();
        let same_r = src.r() == dst.r();
        let same_w1 = equiv(w1, w3);
        let same_w2 = equiv(w2, w4);
        let mut note = None;
        let rule = if same_p && same_q && same_r {
            rules::WEIGHTS
        } else if same_w1 && same_w2 && same_q {
            rules::EXPONENTS_PR
        } else if same_w1 && same_w2 && same_r {
            rules::EXPONENTS_PQ
        } else if same_w2 && same_p {
            rules::TIME_WEIGHT_QR
        } else if same_w1 && same_w2 && same_p {
            note = Some(
                "the q-r inclusion is stated with the source p on both sides; applied as printed".to_string(),
            );
            rules::EXPONENTS_QR
        } else {
            if !same_p {
                note = Some(
                    "the general inclusion is stated with the source p on both sides; \
                     p_dst ≤ p_src is covered by Hölder on unit cells"
                        .to_string(),
                );
            }
            rules::GENERAL
        };
        let mut v = verdict(Relation::Embeds, rule, gen);
        v.constant_hint = Some(hint);
        v.note = note;
        return Ok(v);
    }

    let mut neg = Trace::new();
    neg.check(format!("p: {} = {}", src.p(), dst.p()), src.p() == dst.p());
    neg.check(format!("q: {} = {}", src.q(), dst.q()), src.q() == dst.q());
    neg.check(format!("r: {} = {}", src.r(), dst.r()), src.r() == dst.r());
    neg.check(format!("{w2} ≈ {w4}"), equiv(w2, w4));
    if neg.ok() {
        let mut trace = neg;
        trace.0.push(Check {
            hypothesis: format!("{w3} ≺ {w1}"),
            holds: false,
        });
        let mut v = verdict(Relation::NoRule, rules::WEIGHT_CHARACTERIZATION, trace);
        v.definite_negative = true;
        v.note = Some("embedding fails: with equal exponents and frequency weights it holds only if the target time weight is dominated".into());
        return Ok(v);
    }
    Ok(verdict(Relation::NoRule, rules::NONE, gen))
}

/// Looks for a never-compact result for the embedding of `src` into
/// `(L^p_{w3}, ℓ^1)` (no `w4`) or into `A` with weights `(w3, w4)`.
pub fn decide_compactness(src: &SpaceSpec, theta3: &WeightSpec, theta4: Option<&WeightSpec>) -> Result<Verdict> {
    let (w1, w2, w3) = (src.theta1(), src.theta2(), theta3);
    for w in [w1, w2, w3].into_iter().chain(theta4) {
        closed(w)?;
    }
    let no_vanish = |a: &WeightSpec, b: &WeightSpec| !ratio_vanishes(a, b).unwrap_or(true);

    let mut candidates: Vec<(&str, Trace)> = Vec::new();
    match theta4 {
        None => {
            let mut t = Trace::new();
            t.check(format!("{w3} ≺ {w1}"), prec(w3, w1));
            t.check(format!("{w3}/{w1} does not vanish"), no_vanish(w3, w1));
            candidates.push((rules::INTO_AMALGAM, t));
            let mut t = Trace::new();
            t.check(format!("{w1} ≺ {w2}"), prec(w1, w2));
            t.check(format!("{w3} ≺ {w2}"), prec(w3, w2));
            t.check(format!("{w3}/{w2} does not vanish"), no_vanish(w3, w2));
            candidates.push((rules::INTO_AMALGAM_DUAL, t));
        }
        Some(w4) => {
            let mut t = Trace::new();
            t.check(format!("{w4} ≈ {w2}"), equiv(w4, w2));
            t.check(format!("{w3} ≺ {w1}"), prec(w3, w1));
            t.check(format!("{w3}/{w1} does not vanish"), no_vanish(w3, w1));
            candidates.push((rules::SAME_FREQUENCY_WEIGHT, t));
            let mut t = Trace::new();
            t.check(format!("{w4} ≺ {w2}"), prec(w4, w2));
            t.check(format!("{w2} ≺ {w1}"), prec(w2, w1));
            t.check(format!("{w3} ≺ {w1}"), prec(w3, w1));
            t.check(format!("{w3}/{w1} does not vanish"), no_vanish(w3, w1));
            candidates.push((rules::CHAIN_I, t));
            let mut t = Trace::new();
            t.check(format!("{w3} ≺ {w1}"), prec(w3, w1));
            t.check(format!("{w1} ≺ {w2}"), prec(w1, w2));
            t.check(format!("{w4} ≺ {w2}"), prec(w4, w2));
            t.check(format!("{w3}/{w2} does not vanish"), no_vanish(w3, w2));
            candidates.push((rules::CHAIN_II, t));
        }
    }
    let hit = candidates.iter().position(|(_, t)| t.ok());
    if let Some(i) = hit {
        let (rule, trace) = candidates.swap_remove(i);
        return Ok(verdict(Relation::NeverCompactEmbedding, rule, trace));
    }
    let (_, first) = candidates.swap_remove(0);
    let mut v = verdict(Relation::NoRule, rules::NONE, first);
    if prec(w3, w1) && !no_vanish(w3, w1) {
        v.note = Some(format!("{w3}/{w1} tends to zero; no compactness result applies"));
    }
    Ok(v)
}
