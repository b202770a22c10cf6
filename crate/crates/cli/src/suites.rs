//! Registry of the verification suites run by `check`.

use amalgam_core::verifier::{
    algebra_suite, approximate_identity, bf_chain, divergence_scan, embedding_constant, module_suite,
    noncompactness_witness, translation_bounds, translation_continuity, vague_convergence,
};
use amalgam_core::{
    a_norm, decide_embedding, make_bump, translate, AmalgamError, Case, GridSpec, Relation, SampledFunction64,
    SpaceSpec, SuiteReport, WeightSpec,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::CliError;

type Runner = fn(&RunConfig) -> Result<Vec<SuiteReport>, CliError>;

pub struct Suite {
    pub name: &'static str,
    /// Default relative slack of the suite's upper-bound comparisons.
    pub slack: f64,
    run: Runner,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "algebra", slack: 1e-6, run: algebra },
    Suite { name: "bf", slack: 1e-9, run: bf },
    Suite { name: "translation", slack: 1e-9, run: translation },
    Suite { name: "continuity", slack: 0.0, run: continuity },
    Suite { name: "embedding", slack: 1e-6, run: embedding },
    Suite { name: "noncompact", slack: 1e-6, run: noncompact },
    Suite { name: "approxid", slack: 1e-6, run: approxid },
    Suite { name: "vague", slack: 1e-6, run: vague },
    Suite { name: "module", slack: 1e-6, run: module },
];

pub const NUM_RANDOM_PAIRS: usize = 50;

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run(name: &str, config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let selected: Vec<&Suite> = if name == "all" {
        SUITES.iter().collect()
    } else {
        let s = SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
            CliError::Usage(format!("unknown suite `{name}`; expected one of {} or all", suite_names().join(", ")))
        })?;
        vec![s]
    };
    let mut out = Vec::new();
    for suite in selected {
        let reports = (suite.run)(config)?;
        out.extend(reports.into_iter().map(|r| match config.tolerance(suite.name) {
            Some(tol) => tighten(r, tol),
            None => r,
        }));
    }
    Ok(out)
}

/// Re-checks every `measured ≤ bound` pair sharing a key at the tighter slack.
/// Only the coarse verdict is re-evaluated.
pub fn tighten(mut report: SuiteReport, tol: f64) -> SuiteReport {
    for case in &mut report.cases {
        for (key, &bound) in &case.bound {
            if let Some(&measured) = case.measured.get(key) {
                if measured > bound * (1.0 + tol) {
                    case.pass = false;
                }
            }
        }
    }
    report.overall_pass = report.cases.iter().all(|c| c.pass);
    report.notes.push(format!("slack tightened to {tol:e}"));
    report
}

/// Concatenates reports under one tag, prefixing each case label.
fn merge(tag: &str, parts: Vec<(String, SuiteReport)>) -> SuiteReport {
    let mut merged = SuiteReport {
        theorem_tag: tag.to_string(),
        cases: Vec::new(),
        overall_pass: true,
        grid_refinement_delta: 0.0,
        refined_pass: true,
        notes: Vec::new(),
    };
    for (prefix, r) in parts {
        merged.overall_pass &= r.overall_pass;
        merged.refined_pass &= r.refined_pass;
        merged.grid_refinement_delta = merged.grid_refinement_delta.max(r.grid_refinement_delta);
        merged.notes.extend(r.notes.into_iter().map(|n| format!("{prefix}: {n}")));
        merged.cases.extend(r.cases.into_iter().map(|mut c| {
            c.label = format!("{prefix}: {}", c.label);
            c
        }));
    }
    merged
}

fn poly(s: f64) -> WeightSpec {
    WeightSpec::polynomial(s).expect("nonnegative polynomial weight")
}

fn space(p: f64, q: f64, r: f64, s1: f64, s2: f64) -> SpaceSpec {
    SpaceSpec::new(p, q, r, poly(s1), poly(s2)).expect("valid space")
}

pub fn corpus(config: &RunConfig) -> Result<Vec<SampledFunction64>, CliError> {
    Ok(config
        .corpus
        .iter()
        .map(|spec| spec.build::<f64>(config.grid))
        .collect::<Result<_, _>>()?)
}

fn smooth(config: &RunConfig) -> Result<Vec<SampledFunction64>, CliError> {
    Ok(corpus(config)?.into_iter().filter(|f| f.jumps().is_empty()).collect())
}

fn gaussian(grid: GridSpec) -> Result<SampledFunction64, CliError> {
    Ok(amalgam_core::make_gaussian(grid)?)
}

fn algebra(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let specs = [
        space(2.0, 2.0, 2.0, 0.0, 0.0),
        space(3.0, 2.0, 1.0, 0.0, 0.0),
        space(2.0, 2.0, 2.0, 1.0, 1.0),
        space(3.0, 2.0, 1.0, 1.0, 1.0),
    ];
    Ok(vec![algebra_suite(&corpus(config)?, &specs)?])
}

fn bf(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    Ok(vec![bf_chain(&corpus(config)?, &space(3.0, 2.0, 1.0, 1.0, 1.0))?])
}

pub const TRANSLATION_SWEEP: [f64; 9] = [0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0];

fn translation(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let parts = smooth(config)?
        .iter()
        .map(|f| Ok((f.label().to_string(), translation_bounds(f, &s, &TRANSLATION_SWEEP)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(vec![merge("translation", parts)])
}

fn continuity(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let mut parts = Vec::new();
    for f in smooth(config)? {
        let norm = a_norm(&f, &s)?.total;
        let eps: Vec<f64> = [0.05, 0.1, 0.2].iter().map(|c| c * norm).collect();
        parts.push((f.label().to_string(), translation_continuity(&f, &s, &eps)?));
    }
    Ok(vec![merge("continuity", parts)])
}

/// Pairs for which an inclusion rule applies.
pub fn hand_picked_pairs() -> Vec<(SpaceSpec, SpaceSpec)> {
    let rows: [([f64; 5], [f64; 5]); 20] = [
        ([3.0, 2.0, 1.0, 0.0, 0.0], [2.0, 2.0, 2.0, 0.0, 0.0]),
        ([2.0, 2.0, 2.0, 2.0, 1.0], [2.0, 2.0, 2.0, 1.0, 0.0]),
        ([3.0, 3.0, 1.0, 2.0, 1.0], [2.0, 2.0, 2.0, 1.0, 0.0]),
        ([2.0, 3.0, 1.0, 1.0, 1.0], [2.0, 3.0, 1.0, 1.0, 1.0]),
        ([2.0, 2.0, 2.0, 1.0, 1.0], [1.0, 2.0, 2.0, 1.0, 1.0]),
        ([2.0, 2.0, 1.0, 1.0, 1.0], [2.0, 2.0, 2.0, 1.0, 1.0]),
        ([2.0, 3.0, 2.0, 1.0, 1.0], [2.0, 2.0, 2.0, 1.0, 1.0]),
        ([4.0, 2.0, 1.0, 1.0, 0.0], [2.0, 2.0, 2.0, 0.0, 0.0]),
        ([3.0, 2.0, 2.0, 2.0, 2.0], [3.0, 2.0, 2.0, 0.0, 0.0]),
        ([2.0, 2.0, 2.0, 1.0, 2.0], [2.0, 2.0, 2.0, 1.0, 1.0]),
        ([4.0, 4.0, 1.0, 2.0, 2.0], [1.0, 1.0, 4.0, 0.0, 0.0]),
        ([2.0, 1.5, 1.0, 1.0, 0.0], [1.5, 1.5, 2.0, 0.5, 0.0]),
        ([3.0, 3.0, 3.0, 1.0, 1.0], [3.0, 3.0, 3.0, 1.0, 1.0]),
        ([2.0, 2.0, 1.0, 0.5, 0.5], [2.0, 2.0, 1.0, 0.0, 0.0]),
        ([3.0, 2.0, 1.0, 1.0, 1.0], [2.0, 2.0, 2.0, 1.0, 1.0]),
        ([3.0, 2.0, 1.0, 1.0, 1.0], [3.0, 1.0, 1.0, 1.0, 1.0]),
        ([1.5, 2.0, 1.0, 1.0, 0.0], [1.0, 2.0, 1.0, 1.0, 0.0]),
        ([2.0, 4.0, 2.0, 2.0, 0.0], [2.0, 2.0, 4.0, 1.0, 0.0]),
        ([4.0, 2.0, 2.0, 1.0, 1.0], [3.0, 2.0, 3.0, 1.0, 0.0]),
        ([2.0, 2.0, 2.0, 1.5, 1.0], [2.0, 2.0, 2.0, 1.5, 0.5]),
    ];
    rows.iter()
        .map(|(a, b)| (space(a[0], a[1], a[2], a[3], a[4]), space(b[0], b[1], b[2], b[3], b[4])))
        .collect()
}

const EXPONENTS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 4.0];
const ORDERS: [f64; 5] = [0.0, 0.5, 1.0, 1.5, 2.0];

/// `n` seeded pairs of polynomial-weight spaces on which some inclusion rule
/// applies: the source is drawn first, the target from the admissible side of
/// every parameter.
pub fn random_pairs(seed: u64, n: usize) -> Result<Vec<(SpaceSpec, SpaceSpec)>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let pick = |rng: &mut ChaCha8Rng, xs: &[f64]| *xs.choose(rng).expect("nonempty");
    while out.len() < n {
        let src = [
            pick(&mut rng, &EXPONENTS),
            pick(&mut rng, &EXPONENTS),
            pick(&mut rng, &EXPONENTS),
            pick(&mut rng, &ORDERS),
            pick(&mut rng, &ORDERS),
        ];
        let below = |v: f64, xs: &[f64]| xs.iter().copied().filter(|&x| x <= v).collect::<Vec<_>>();
        let above = |v: f64, xs: &[f64]| xs.iter().copied().filter(|&x| x >= v).collect::<Vec<_>>();
        let dst = [
            pick(&mut rng, &below(src[0], &EXPONENTS)),
            pick(&mut rng, &below(src[1], &EXPONENTS)),
            pick(&mut rng, &above(src[2], &EXPONENTS)),
            pick(&mut rng, &below(src[3], &ORDERS)),
            pick(&mut rng, &below(src[4], &ORDERS)),
        ];
        let a = space(src[0], src[1], src[2], src[3], src[4]);
        let b = space(dst[0], dst[1], dst[2], dst[3], dst[4]);
        if matches!(decide_embedding(&a, &b)?.relation, Relation::Embeds | Relation::Equal) {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// Same exponents and frequency weight, strictly heavier target time weight.
pub fn definite_negative_pairs() -> Vec<(SpaceSpec, SpaceSpec)> {
    let rows: [([f64; 4], f64, f64); 5] = [
        ([2.0, 2.0, 2.0, 0.0], 0.0, 1.0),
        ([3.0, 2.0, 1.0, 0.0], 0.0, 1.0),
        ([2.0, 2.0, 2.0, 1.0], 1.0, 2.0),
        ([1.0, 1.0, 1.0, 0.0], 0.5, 1.5),
        ([4.0, 3.0, 2.0, 0.5], 1.0, 3.0),
    ];
    rows.iter()
        .map(|&([p, q, r, s2], a, b)| (space(p, q, r, a, s2), space(p, q, r, b, s2)))
        .collect()
}

/// Grid wide enough for the divergence sweep.
pub fn divergence_grid() -> GridSpec {
    GridSpec::new(128, 16).expect("valid grid")
}

pub const DIVERGENCE_SWEEP: [f64; 5] = [0.0, 15.0, 30.0, 60.0, 120.0];

fn embedding(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let fs = corpus(config)?;
    let mut pairs = hand_picked_pairs();
    pairs.extend(random_pairs(config.seed, NUM_RANDOM_PAIRS)?);
    let parts = pairs
        .iter()
        .map(|(src, dst)| Ok((format!("{src} -> {dst}"), embedding_constant(src, dst, &fs)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let f = gaussian(divergence_grid())?;
    let mut scans = Vec::new();
    for (src, dst) in definite_negative_pairs() {
        let verdict = decide_embedding(&src, &dst)?;
        if !verdict.definite_negative {
            return Err(CliError::Core(AmalgamError::HypothesisViolation(format!(
                "{src} -> {dst} is not a definite negative ({})",
                verdict.rule
            ))));
        }
        scans.push((format!("{src} -> {dst}"), divergence_scan(&src, &dst, &f, &DIVERGENCE_SWEEP)?));
    }
    Ok(vec![merge("embedding", parts), merge("embedding-divergence", scans)])
}

pub const WITNESS_SWEEP: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

fn noncompact(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let f = gaussian(config.grid)?;
    let mut report = noncompactness_witness(&f, &poly(1.0), &s, &WITNESS_SWEEP)?;
    let rejected = matches!(
        noncompactness_witness(&f, &poly(0.0), &s, &WITNESS_SWEEP),
        Err(AmalgamError::HypothesisViolation(_))
    );
    report.cases.push(
        Case::new("vanishing weight ratio rejected")
            .input("theta", "poly:0")
            .input("space", &s)
            .require(rejected),
    );
    report.overall_pass &= rejected;
    report.refined_pass &= rejected;
    Ok(vec![report])
}

pub const RADII: [f64; 4] = [1.0, 0.5, 0.25, 0.125];

fn approxid(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    Ok(vec![approximate_identity(&gaussian(config.grid)?, &s, &RADII)?])
}

fn vague(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    let f = gaussian(config.grid)?;
    let mut fs = Vec::new();
    let mut clipped = Vec::new();
    for &t in &WITNESS_SWEEP {
        match translate(&f, t) {
            Ok(tf) => fs.push(tf.scale_real(1.0 / s.theta1().eval(t)?)),
            Err(AmalgamError::WindowOverflow { .. }) => clipped.push(format!("t = {t} clipped: translate leaves the window")),
            Err(e) => return Err(e.into()),
        }
    }
    let k = make_bump(0.0, 1.0, config.grid)?;
    let mut report = vague_convergence(&fs, &k, &s)?;
    report.notes.extend(clipped);
    Ok(vec![report])
}

fn module(config: &RunConfig) -> Result<Vec<SuiteReport>, CliError> {
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0).with_module_weight(poly(2.0));
    Ok(vec![module_suite(&corpus(config)?, &s)?])
}
