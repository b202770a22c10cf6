//! Beurling weights on the real line.
//!
//! A [`WeightSpec`] is a validated weight: every value is at least one and the
//! weight is submultiplicative, `w(x + y) <= w(x) w(y)`. Invalid parameter sets
//! are rejected on construction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AmalgamError, Result};
use crate::scalar::Real;

/// Relative slack allowed in the submultiplicativity test.
pub const SUBMULT_SLACK: f64 = 1e-12;

/// Default ceiling for the probe-based dominance test.
pub const DEFAULT_CEILING: f64 = 1e6;

/// Raw weight description, as it appears in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum WeightFamily {
    /// `(1 + |x|)^s`
    Polynomial { s: f64 },
    /// `exp(a |x|)`
    Exponential { a: f64 },
    /// Pointwise product of the factors.
    Product { factors: Vec<WeightFamily> },
    /// Piecewise linear interpolation of `(x, v)` nodes.
    Tabulated { x: Vec<f64>, v: Vec<f64> },
}

/// A validated Beurling weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightFamily", into = "WeightFamily")]
pub struct WeightSpec {
    family: WeightFamily,
}

impl From<WeightSpec> for WeightFamily {
    fn from(w: WeightSpec) -> Self {
        w.family
    }
}

impl TryFrom<WeightFamily> for WeightSpec {
    type Error = AmalgamError;

    fn try_from(family: WeightFamily) -> Result<Self> {
        WeightSpec::from_family(family)
    }
}

impl WeightSpec {
    pub fn from_family(family: WeightFamily) -> Result<Self> {
        validate_params(&family)?;
        let spec = WeightSpec { family };
        spec.probe_validate()?;
        Ok(spec)
    }

    /// The polynomial weight `(1 + |x|)^s`.
    pub fn polynomial(s: f64) -> Result<Self> {
        Self::from_family(WeightFamily::Polynomial { s })
    }

    pub fn exponential(a: f64) -> Result<Self> {
        Self::from_family(WeightFamily::Exponential { a })
    }

    pub fn product(factors: Vec<WeightSpec>) -> Result<Self> {
        Self::from_family(WeightFamily::Product {
            factors: factors.into_iter().map(|w| w.family).collect(),
        })
    }

    pub fn tabulated(x: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        Self::from_family(WeightFamily::Tabulated { x, v })
    }

    /// The trivial weight `w = 1`.
    pub fn unit() -> Self {
        WeightSpec {
            family: WeightFamily::Polynomial { s: 0.0 },
        }
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    /// `(s, a)` such that the weight equals `(1 + |x|)^s exp(a |x|)`, when the
    /// weight is built from polynomial and exponential factors only.
    pub fn closed_form(&self) -> Option<(f64, f64)> {
        closed_form(&self.family)
    }

    pub fn is_tabulated(&self) -> bool {
        self.closed_form().is_none()
    }

    /// Interval on which the weight can be evaluated.
    pub fn domain(&self) -> (f64, f64) {
        domain(&self.family)
    }

    pub fn eval<T: Real>(&self, x: T) -> Result<T> {
        eval(&self.family, x)
    }

    /// Natural logarithm of the weight, evaluated without forming the weight
    /// itself (exponential weights overflow long before their logarithm does).
    pub fn ln_eval(&self, x: f64) -> Result<f64> {
        ln_eval(&self.family, x)
    }

    fn probe_validate(&self) -> Result<()> {
        let probes = validation_probes(&self.family);
        let check = check_submultiplicative(self, &probes);
        if !check.pass {
            return Err(AmalgamError::InvalidWeight(format!(
                "not submultiplicative: ratio {} on the validation probes",
                check.max_ratio
            )));
        }
        Ok(())
    }
}

fn validate_params(family: &WeightFamily) -> Result<()> {
    match family {
        WeightFamily::Polynomial { s } => {
            if !(s.is_finite() && *s >= 0.0) {
                return Err(AmalgamError::InvalidWeight(format!(
                    "polynomial exponent s = {s} must be finite and >= 0"
                )));
            }
        }
        WeightFamily::Exponential { a } => {
            if !(a.is_finite() && *a >= 0.0) {
                return Err(AmalgamError::InvalidWeight(format!(
                    "exponential rate a = {a} must be finite and >= 0"
                )));
            }
        }
        WeightFamily::Product { factors } => {
            if factors.is_empty() {
                return Err(AmalgamError::InvalidWeight("empty product".into()));
            }
            for f in factors {
                validate_params(f)?;
            }
        }
        WeightFamily::Tabulated { x, v } => {
            if x.len() != v.len() || x.len() < 2 {
                return Err(AmalgamError::InvalidWeight(format!(
                    "tabulated weight needs matching x/v arrays of length >= 2 (got {} and {})",
                    x.len(),
                    v.len()
                )));
            }
            if x.iter().chain(v.iter()).any(|t| !t.is_finite()) {
                return Err(AmalgamError::InvalidWeight("non-finite table entry".into()));
            }
            if x.windows(2).any(|w| w[1] <= w[0]) {
                return Err(AmalgamError::InvalidWeight(
                    "tabulated nodes must be strictly increasing".into(),
                ));
            }
            if let Some(bad) = v.iter().find(|&&t| t < 1.0) {
                return Err(AmalgamError::InvalidWeight(format!(
                    "tabulated value {bad} is below 1"
                )));
            }
        }
    }
    Ok(())
}

fn closed_form(family: &WeightFamily) -> Option<(f64, f64)> {
    match family {
        WeightFamily::Polynomial { s } => Some((*s, 0.0)),
        WeightFamily::Exponential { a } => Some((0.0, *a)),
        WeightFamily::Product { factors } => factors.iter().try_fold((0.0, 0.0), |(s, a), f| {
            closed_form(f).map(|(fs, fa)| (s + fs, a + fa))
        }),
        WeightFamily::Tabulated { .. } => None,
    }
}

fn domain(family: &WeightFamily) -> (f64, f64) {
    match family {
        WeightFamily::Polynomial { .. } | WeightFamily::Exponential { .. } => {
            (f64::NEG_INFINITY, f64::INFINITY)
        }
        WeightFamily::Product { factors } => factors.iter().map(domain).fold(
            (f64::NEG_INFINITY, f64::INFINITY),
            |(lo, hi), (flo, fhi)| (lo.max(flo), hi.min(fhi)),
        ),
        WeightFamily::Tabulated { x, .. } => (x[0], x[x.len() - 1]),
    }
}

fn interpolate(x: &[f64], v: &[f64], t: f64) -> Result<f64> {
    let (lo, hi) = (x[0], x[x.len() - 1]);
    if !(t >= lo && t <= hi) {
        return Err(AmalgamError::OutOfDomain { x: t, lo, hi });
    }
    let i = x.partition_point(|&node| node <= t);
    if i >= x.len() {
        return Ok(v[x.len() - 1]);
    }
    let (x0, x1, v0, v1) = (x[i - 1], x[i], v[i - 1], v[i]);
    let theta = (t - x0) / (x1 - x0);
    Ok(v0 + theta * (v1 - v0))
}

fn eval<T: Real>(family: &WeightFamily, x: T) -> Result<T> {
    match family {
        WeightFamily::Polynomial { s } => {
            if *s == 0.0 {
                Ok(T::one())
            } else {
                Ok((T::one() + x.abs()).powf(T::lit(*s)))
            }
        }
        WeightFamily::Exponential { a } => Ok((T::lit(*a) * x.abs()).exp()),
        WeightFamily::Product { factors } => factors
            .iter()
            .try_fold(T::one(), |acc, f| eval(f, x).map(|w| acc * w)),
        WeightFamily::Tabulated { x: nodes, v } => {
            interpolate(nodes, v, x.as_f64()).map(T::lit)
        }
    }
}

fn ln_eval(family: &WeightFamily, x: f64) -> Result<f64> {
    match family {
        WeightFamily::Polynomial { s } => Ok(if *s == 0.0 { 0.0 } else { s * x.abs().ln_1p() }),
        WeightFamily::Exponential { a } => Ok(a * x.abs()),
        WeightFamily::Product { factors } => factors
            .iter()
            .try_fold(0.0, |acc, f| ln_eval(f, x).map(|l| acc + l)),
        WeightFamily::Tabulated { x: nodes, v } => interpolate(nodes, v, x).map(f64::ln),
    }
}

fn validation_probes(family: &WeightFamily) -> Vec<(f64, f64)> {
    match family {
        WeightFamily::Tabulated { x, .. } => {
            // node pairs, thinned to at most 256 x 256
            let stride = x.len().div_ceil(256).max(1);
            let nodes: Vec<f64> = x.iter().copied().step_by(stride).collect();
            let mut probes = Vec::with_capacity(nodes.len() * nodes.len());
            for &a in &nodes {
                for &b in &nodes {
                    probes.push((a, b));
                }
            }
            probes
        }
        _ => {
            let pts: Vec<f64> = (-20..=20).map(|k| k as f64 * 2.5).collect();
            pts.iter()
                .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
                .collect()
        }
    }
}

/// Outcome of [`check_submultiplicative`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmultiplicativeCheck {
    pub max_ratio: f64,
    pub pass: bool,
    /// Probes that fell inside the weight's domain.
    pub evaluated: usize,
}

/// Largest `w(x + y) / (w(x) w(y))` over the probes. Probes leaving the domain
/// of a tabulated weight are skipped.
pub fn check_submultiplicative(w: &WeightSpec, probes: &[(f64, f64)]) -> SubmultiplicativeCheck {
    let mut max_ln = f64::NEG_INFINITY;
    let mut evaluated = 0;
    for &(x, y) in probes {
        let (Ok(lxy), Ok(lx), Ok(ly)) = (w.ln_eval(x + y), w.ln_eval(x), w.ln_eval(y)) else {
            continue;
        };
        evaluated += 1;
        max_ln = max_ln.max(lxy - lx - ly);
    }
    let max_ratio = if evaluated == 0 { 1.0 } else { max_ln.exp() };
    SubmultiplicativeCheck {
        max_ratio,
        pass: max_ratio <= 1.0 + SUBMULT_SLACK,
        evaluated,
    }
}

/// Result of testing `w1 ≺ w2`, i.e. `w1 <= C w2` everywhere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceVerdict {
    pub holds: bool,
    /// Least admissible `C` (exact for closed-form pairs, probe supremum
    /// otherwise). `None` when the relation fails.
    pub constant: Option<f64>,
    /// Point maximizing the ratio on the probes, or for a closed-form failure a
    /// point where the ratio exceeds the ceiling.
    pub witness: f64,
    pub probe_count: usize,
    /// Whether the closed-form decision was used.
    pub analytic: bool,
}

/// Exact decision of `w1 ≺ w2` for closed-form weights.
pub fn dominates_exact(w1: &WeightSpec, w2: &WeightSpec) -> Option<bool> {
    let (s1, a1) = w1.closed_form()?;
    let (s2, a2) = w2.closed_form()?;
    Some(a1 < a2 || (a1 == a2 && s1 <= s2))
}

/// Whether `w_num / w_den -> 0` as `|x| -> ∞`, for closed-form weights.
pub fn ratio_vanishes(w_num: &WeightSpec, w_den: &WeightSpec) -> Option<bool> {
    let (s1, a1) = w_num.closed_form()?;
    let (s2, a2) = w_den.closed_form()?;
    Some(a1 < a2 || (a1 == a2 && s1 < s2))
}

/// Tests `w1 ≺ w2`. Closed-form pairs are decided exactly; other pairs are
/// semi-decided on the probes against `ceiling`.
pub fn dominates(
    w1: &WeightSpec,
    w2: &WeightSpec,
    probes: &[f64],
    ceiling: f64,
) -> Result<DominanceVerdict> {
    check_probe_args(probes, ceiling)?;
    match (w1.closed_form(), w2.closed_form()) {
        (Some(c1), Some(c2)) => Ok(analytic_dominance(c1, c2, probes.len(), ceiling)),
        _ => dominates_numeric(w1, w2, probes, ceiling),
    }
}

/// Probe-only version of [`dominates`], used for tabulated weights and to
/// cross-check the closed-form decision.
pub fn dominates_numeric(
    w1: &WeightSpec,
    w2: &WeightSpec,
    probes: &[f64],
    ceiling: f64,
) -> Result<DominanceVerdict> {
    check_probe_args(probes, ceiling)?;
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut used = 0;
    for &x in probes {
        let (Ok(l1), Ok(l2)) = (w1.ln_eval(x), w2.ln_eval(x)) else {
            continue;
        };
        used += 1;
        if l1 - l2 > best.0 {
            best = (l1 - l2, x);
        }
    }
    if used == 0 {
        return Err(AmalgamError::InvalidArgument(
            "no probe lies in the common domain of both weights".into(),
        ));
    }
    let sup = best.0.exp();
    let holds = sup <= ceiling;
    Ok(DominanceVerdict {
        holds,
        constant: holds.then_some(sup),
        witness: best.1,
        probe_count: used,
        analytic: false,
    })
}

fn check_probe_args(probes: &[f64], ceiling: f64) -> Result<()> {
    if probes.is_empty() {
        return Err(AmalgamError::InvalidArgument("probe list is empty".into()));
    }
    if !(ceiling > 1.0) {
        return Err(AmalgamError::InvalidArgument(format!(
            "ceiling must exceed 1 (got {ceiling})"
        )));
    }
    Ok(())
}

fn analytic_dominance(
    (s1, a1): (f64, f64),
    (s2, a2): (f64, f64),
    probe_count: usize,
    ceiling: f64,
) -> DominanceVerdict {
    // ln ratio(u) = d ln(1 + u) - b u for u = |x| >= 0
    let d = s1 - s2;
    let b = a2 - a1;
    let holds = b > 0.0 || (b == 0.0 && d <= 0.0);
    if holds {
        let (constant, witness) = if b > 0.0 && d > 0.0 && d / b > 1.0 {
            let u = d / b - 1.0;
            ((d * (d / b).ln() - b * u).exp(), u)
        } else {
            (1.0, 0.0)
        };
        return DominanceVerdict {
            holds,
            constant: Some(constant),
            witness,
            probe_count,
            analytic: true,
        };
    }
    let target = ceiling.ln();
    let ln_ratio = |u: f64| d * u.ln_1p() - b * u;
    let mut u = 1.0;
    while ln_ratio(u) <= target && u < 1e300 {
        u *= 2.0;
    }
    DominanceVerdict {
        holds,
        constant: None,
        witness: u,
        probe_count,
        analytic: true,
    }
}

/// Two-sided dominance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Equivalence {
    pub holds: bool,
    /// `w1 ≺ w2`
    pub forward: DominanceVerdict,
    /// `w2 ≺ w1`
    pub backward: DominanceVerdict,
}

pub fn equivalent(
    w1: &WeightSpec,
    w2: &WeightSpec,
    probes: &[f64],
    ceiling: f64,
) -> Result<Equivalence> {
    let forward = dominates(w1, w2, probes, ceiling)?;
    let backward = dominates(w2, w1, probes, ceiling)?;
    Ok(Equivalence {
        holds: forward.holds && backward.holds,
        forward,
        backward,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BdVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BdReport {
    pub partial_sum: f64,
    pub verdict: BdVerdict,
    /// Number of summands actually accumulated (tabulated weights stop at the
    /// edge of their grid).
    pub terms: usize,
}

/// Partial sum of `Σ ln w(n x) / n²` for `n = 1..=n_max`, with a verdict on
/// convergence of the full series.
pub fn bd_condition(w: &WeightSpec, x: f64, n_max: usize) -> Result<BdReport> {
    if x == 0.0 || !x.is_finite() {
        return Err(AmalgamError::InvalidArgument(format!(
            "the series is probed at a finite nonzero point (got x = {x})"
        )));
    }
    if n_max < 10 {
        return Err(AmalgamError::InvalidArgument(format!(
            "n_max must be at least 10 (got {n_max})"
        )));
    }
    let mut terms = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        match w.ln_eval(n as f64 * x) {
            Ok(l) => terms.push(l / (n as f64 * n as f64)),
            Err(_) => break,
        }
    }
    // smallest summands first
    let partial_sum = terms.iter().rev().sum();
    let verdict = match w.closed_form() {
        Some((_, a)) if a > 0.0 => BdVerdict::Diverges,
        Some(_) => BdVerdict::Converges,
        None => BdVerdict::Inconclusive,
    };
    Ok(BdReport {
        partial_sum,
        verdict,
        terms: terms.len(),
    })
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_family(&self.family, f)
    }
}

fn fmt_family(family: &WeightFamily, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match family {
        WeightFamily::Polynomial { s } => write!(f, "poly:{s}"),
        WeightFamily::Exponential { a } => write!(f, "exp:{a}"),
        WeightFamily::Product { factors } => {
            for (i, factor) in factors.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                fmt_family(factor, f)?;
            }
            Ok(())
        }
        WeightFamily::Tabulated { x, .. } => write!(f, "tabulated[{}]", x.len()),
    }
}

/// Parses `poly:<s>`, `exp:<a>`, products such as `poly:1*exp:0.5`, or a JSON
/// weight object.
impl FromStr for WeightSpec {
    type Err = AmalgamError;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            let family: WeightFamily =
                serde_json::from_str(text).map_err(|e| AmalgamError::Parse(e.to_string()))?;
            return WeightSpec::from_family(family);
        }
        let mut factors = Vec::new();
        for part in text.split('*') {
            let (kind, value) = part
                .split_once(':')
                .ok_or_else(|| AmalgamError::Parse(format!("weight `{part}`: expected kind:value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| AmalgamError::Parse(format!("weight `{part}`: bad number")))?;
            factors.push(match kind.trim() {
                "poly" | "polynomial" => WeightFamily::Polynomial { s: value },
                "exp" | "exponential" => WeightFamily::Exponential { a: value },
                other => {
                    return Err(AmalgamError::Parse(format!("unknown weight family `{other}`")))
                }
            });
        }
        let family = if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            WeightFamily::Product { factors }
        };
        WeightSpec::from_family(family)
    }
}
