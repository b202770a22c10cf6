//! The algebra `A^{p,1,q,r}_{w1,w2}`: functions in `(L^p_{w1}, ℓ^1)` whose
//! transform lies in `(L^q_{w2}, ℓ^r)`, normed by the sum of the two parts.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amalgam::{amalgam_norm, Exponent, NormReport};
use crate::error::{AmalgamError, Result};
use crate::funcrep::SampledFunction;
use crate::scalar::Real;
use crate::spectral::{convolve, fourier, translate};
use crate::weights::{dominates, WeightSpec, DEFAULT_CEILING};

/// Multiplicative slack on quadrature-backed inequalities.
pub const INEQUALITY_SLACK: f64 = 1e-6;

/// Exponents `(p, q, r)` in `[1, ∞)` with the time weight `theta1`, the
/// frequency weight `theta2`, and an optional module weight `theta0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct SpaceSpec {
    p: f64,
    q: f64,
    r: f64,
    theta1: WeightSpec,
    theta2: WeightSpec,
    theta0: Option<WeightSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSpace {
    p: f64,
    q: f64,
    r: f64,
    theta1: WeightSpec,
    theta2: WeightSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta0: Option<WeightSpec>,
}

impl TryFrom<RawSpace> for SpaceSpec {
    type Error = AmalgamError;

    fn try_from(raw: RawSpace) -> Result<Self> {
        let mut s = SpaceSpec::new(raw.p, raw.q, raw.r, raw.theta1, raw.theta2)?;
        s.theta0 = raw.theta0;
        Ok(s)
    }
}

impl From<SpaceSpec> for RawSpace {
    fn from(s: SpaceSpec) -> Self {
        RawSpace {
            p: s.p,
            q: s.q,
            r: s.r,
            theta1: s.theta1,
            theta2: s.theta2,
            theta0: s.theta0,
        }
    }
}

impl SpaceSpec {
    pub fn new(p: f64, q: f64, r: f64, theta1: WeightSpec, theta2: WeightSpec) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q), ("r", r)] {
            if !(v >= 1.0 && v.is_finite()) {
                return Err(AmalgamError::InvalidExponent(format!(
                    "{name} = {v} must lie in [1, ∞)"
                )));
            }
        }
        Ok(SpaceSpec {
            p,
            q,
            r,
            theta1,
            theta2,
            theta0: None,
        })
    }

    /// Unweighted space with the given exponents.
    pub fn unweighted(p: f64, q: f64, r: f64) -> Result<Self> {
        SpaceSpec::new(p, q, r, WeightSpec::unit(), WeightSpec::unit())
    }

    pub fn with_module_weight(mut self, theta0: WeightSpec) -> Self {
        self.theta0 = Some(theta0);
        self
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta1(&self) -> &WeightSpec {
        &self.theta1
    }

    pub fn theta2(&self) -> &WeightSpec {
        &self.theta2
    }

    pub fn theta0(&self) -> Option<&WeightSpec> {
        self.theta0.as_ref()
    }

    pub fn p_exp(&self) -> Exponent {
        Exponent::Finite(self.p)
    }

    pub fn q_exp(&self) -> Exponent {
        Exponent::Finite(self.q)
    }

    pub fn r_exp(&self) -> Exponent {
        Exponent::Finite(self.r)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A[p={},q={},r={},w1={},w2={}",
            self.p, self.q, self.r, self.theta1, self.theta2
        )?;
        if let Some(w0) = &self.theta0 {
            write!(f, ",w0={w0}")?;
        }
        write!(f, "]")
    }
}

/// Parses JSON or `p=3,q=2,r=1,w1=poly:2,w2=poly:1[,w0=poly:3]`.
impl FromStr for SpaceSpec {
    type Err = AmalgamError;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| AmalgamError::Parse(e.to_string()));
        }
        let (mut p, mut q, mut r) = (None, None, None);
        let (mut w1, mut w2, mut w0) = (WeightSpec::unit(), WeightSpec::unit(), None);
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| AmalgamError::Parse(format!("space spec item `{item}` is not key=value")))?;
            let num = || {
                value
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| AmalgamError::Parse(format!("bad number `{value}` for {key}")))
            };
            match key.trim() {
                "p" => p = Some(num()?),
                "q" => q = Some(num()?),
                "r" => r = Some(num()?),
                "w1" => w1 = value.parse()?,
                "w2" => w2 = value.parse()?,
                "w0" => w0 = Some(value.parse()?),
                other => return Err(AmalgamError::Parse(format!("unknown space spec key `{other}`"))),
            }
        }
        let need = |v: Option<f64>, k: &str| v.ok_or_else(|| AmalgamError::Parse(format!("space spec is missing {k}")));
        let mut s = SpaceSpec::new(need(p, "p")?, need(q, "q")?, need(r, "r")?, w1, w2)?;
        s.theta0 = w0;
        Ok(s)
    }
}

/// The two parts of the A-norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ANorm<T> {
    pub total: T,
    pub part_time: NormReport<T>,
    pub part_freq: NormReport<T>,
}

/// `‖f‖_{p1,w1} + ‖f̂‖_{qr,w2}`.
pub fn a_norm<T: Real>(f: &SampledFunction<T>, s: &SpaceSpec) -> Result<ANorm<T>> {
    let part_time = amalgam_norm(f, s.p_exp(), Exponent::Finite(1.0), &s.theta1)?;
    let part_freq = amalgam_norm(&fourier(f), s.q_exp(), s.r_exp(), &s.theta2)?;
    Ok(ANorm {
        total: part_time.global + part_freq.global,
        part_time,
        part_freq,
    })
}

/// Numeric membership proxy: both parts finite and changing by less than 1%
/// under one grid refinement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub time_change: f64,
    pub freq_change: f64,
    pub member: bool,
}

pub fn membership<T: Real>(f: &SampledFunction<T>, s: &SpaceSpec) -> Result<Membership> {
    let coarse = a_norm(f, s)?;
    let fine = a_norm(&f.refine()?, s)?;
    let change = |a: T, b: T| {
        let (a, b) = (a.as_f64(), b.as_f64());
        if a == b {
            0.0
        } else {
            (a - b).abs() / a.abs().max(b.abs())
        }
    };
    let time_change = change(coarse.part_time.global, fine.part_time.global);
    let freq_change = change(coarse.part_freq.global, fine.part_freq.global);
    let finite = coarse.total.is_finite() && fine.total.is_finite();
    Ok(Membership {
        time_change,
        freq_change,
        member: finite && time_change < 0.01 && freq_change < 0.01,
    })
}

/// One inequality `lhs ≤ rhs` of a verified chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl Link {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, slack: f64) -> Self {
        Link {
            name: name.into(),
            lhs,
            rhs,
            pass: lhs <= rhs * (1.0 + slack),
        }
    }
}

/// Young-type constant for `‖f∗g‖_{p1,w} ≤ C ‖f‖_{p1,w} ‖g‖_{11,w}` on the line:
/// each product of cell pieces straddles two cells.
pub fn convolution_constant(p: f64) -> f64 {
    2f64.powf(1.0 - 1.0 / p)
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    /// `‖f∗g‖_A`
    pub lhs: f64,
    pub links: Vec<Link>,
    /// `‖f∗g‖_{p1,w1} / (‖f‖_{p1,w1} ‖g‖_{p1,w1})`
    pub c_empirical: f64,
    pub c_analytic: f64,
    pub pass: bool,
}

/// Checks the submultiplicativity chain of the A-norm for `f ∗ g`.
pub fn algebra_chain_check<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>, s: &SpaceSpec) -> Result<ChainReport> {
    let fg = convolve(f, g)?;
    let one = Exponent::Finite(1.0);
    let unit = WeightSpec::unit();
    let f_a = a_norm(f, s)?;
    let g_a = a_norm(g, s)?;
    let fg_a = a_norm(&fg, s)?;
    let f_hat_sup = fourier(f).values().iter().fold(T::zero(), |m, z| m.max(z.norm())).as_f64();
    let f_l1 = amalgam_norm(f, one, one, &unit)?.global.as_f64();
    let f_p1 = f_a.part_time.global.as_f64();
    let g_p1 = g_a.part_time.global.as_f64();
    let g_11 = amalgam_norm(g, one, one, &s.theta1)?.global.as_f64();
    let g_qr = g_a.part_freq.global.as_f64();
    let fg_p1 = fg_a.part_time.global.as_f64();
    let fg_qr = fg_a.part_freq.global.as_f64();
    let c = convolution_constant(s.p);
    let slack = INEQUALITY_SLACK;
    let links = vec![
        Link::new("sup |f^| <= |f|_1", f_hat_sup, f_l1, slack),
        Link::new("|f|_1 <= |f|_p1,w1", f_l1, f_p1, slack),
        Link::new("|(f*g)^|_qr,w2 <= sup |f^| |g^|_qr,w2", fg_qr, f_hat_sup * g_qr, slack),
        Link::new("|f*g|_p1,w1 <= C |f|_p1,w1 |g|_11,w1", fg_p1, c * f_p1 * g_11, slack),
        Link::new("|g|_11,w1 <= |g|_p1,w1", g_11, g_p1, slack),
        Link::new(
            "|f*g|_A <= max(C,1) |f|_A |g|_A",
            fg_a.total.as_f64(),
            c.max(1.0) * f_a.total.as_f64() * g_a.total.as_f64(),
            slack,
        ),
    ];
    let pass = links.iter().all(|l| l.pass);
    Ok(ChainReport {
        lhs: fg_a.total.as_f64(),
        links,
        c_empirical: ratio(fg_p1, f_p1 * g_p1),
        c_analytic: c,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleReport {
    /// `‖f∗g‖_A / (‖f‖_A ‖g‖_{1,w0})`
    pub ratio: f64,
    /// `max(1, C_empirical)` with `C_empirical` the time-part ratio.
    pub k: f64,
    pub c_empirical: f64,
    /// `max(1, 2^{1-1/p} C)` with `C` the dominance constant of `w1 ≺ w0`.
    pub k_analytic: f64,
    pub pass: bool,
}

/// Checks `‖f∗g‖_A ≤ K ‖f‖_A ‖g‖_{1,w0}` for the module weight of `s`.
pub fn module_check<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>, s: &SpaceSpec) -> Result<ModuleReport> {
    let theta0 = s
        .theta0
        .as_ref()
        .ok_or_else(|| AmalgamError::InvalidArgument("module check needs a module weight w0".into()))?;
    let probes: Vec<f64> = (-1000..=1000).map(|i| i as f64).collect();
    let dom = dominates(&s.theta1, theta0, &probes, DEFAULT_CEILING)?;
    if !dom.holds {
        return Err(AmalgamError::HypothesisViolation(format!(
            "module weight must dominate: {} is not ≺ {}",
            s.theta1, theta0
        )));
    }
    let c_dom = dom.constant.unwrap_or(1.0);
    let one = Exponent::Finite(1.0);
    let fg_a = a_norm(&convolve(f, g)?, s)?;
    let f_a = a_norm(f, s)?;
    let g_10 = amalgam_norm(g, one, one, theta0)?.global.as_f64();
    let denominator = f_a.total.as_f64() * g_10;
    let r = ratio(fg_a.total.as_f64(), denominator);
    let c_emp = ratio(fg_a.part_time.global.as_f64(), f_a.part_time.global.as_f64() * g_10);
    let k = c_emp.max(1.0);
    let k_analytic = (convolution_constant(s.p) * c_dom).max(1.0);
    let slack = 1.0 + INEQUALITY_SLACK;
    Ok(ModuleReport {
        ratio: r,
        k,
        c_empirical: c_emp,
        k_analytic,
        pass: r <= k * slack && r <= k_analytic * slack,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub c: [f64; 2],
}

/// Finite atomic measure `Σ c_i δ_{x_i}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn dirac(x: f64) -> Self {
        DiscreteMeasure {
            atoms: vec![Atom { x, c: [1.0, 0.0] }],
        }
    }

    pub fn with_atom(mut self, x: f64, c: Complex<f64>) -> Self {
        self.atoms.push(Atom { x, c: [c.re, c.im] });
        self
    }

    pub fn scaled(&self, s: f64) -> Self {
        DiscreteMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    x: a.x,
                    c: [a.c[0] * s, a.c[1] * s],
                })
                .collect(),
        }
    }

    /// `Σ |c_i| w(x_i)`.
    pub fn weighted_mass(&self, w: &WeightSpec) -> Result<f64> {
        self.atoms
            .iter()
            .map(|a| Ok(Complex::new(a.c[0], a.c[1]).norm() * w.eval(a.x)?))
            .sum()
    }
}

/// `μ ∗ f = Σ c_i T_{x_i} f`.
pub fn measure_convolve<T: Real>(mu: &DiscreteMeasure, f: &SampledFunction<T>) -> Result<SampledFunction<T>> {
    let mut acc: Option<SampledFunction<T>> = None;
    for atom in &mu.atoms {
        let c = Complex::new(T::lit(atom.c[0]), T::lit(atom.c[1]));
        let term = translate(f, atom.x)?.scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    let acc = acc.unwrap_or_else(|| SampledFunction::zeros(f.grid()));
    Ok(acc.with_label(format!("mu*{}", f.label())))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplierEstimate {
    /// Lower bound for the multiplier norm.
    pub estimate: f64,
    pub argmax: String,
    pub corpus: Vec<String>,
    pub ratios: Vec<f64>,
}

/// `max_f ‖μ∗f‖_A / ‖f‖_{11,w1}` over the corpus.
pub fn multiplier_norm_estimate<T: Real>(
    mu: &DiscreteMeasure,
    s: &SpaceSpec,
    corpus: &[SampledFunction<T>],
) -> Result<MultiplierEstimate> {
    if corpus.is_empty() {
        return Err(AmalgamError::EmptyCorpus);
    }
    let one = Exponent::Finite(1.0);
    let ratios: Vec<f64> = corpus
        .par_iter()
        .map(|f| {
            let den = amalgam_norm(f, one, one, &s.theta1)?.global.as_f64();
            if den == 0.0 {
                return Err(AmalgamError::InvalidArgument(format!(
                    "corpus member `{}` is zero",
                    f.label()
                )));
            }
            Ok(a_norm(&measure_convolve(mu, f)?, s)?.total.as_f64() / den)
        })
        .collect::<Result<_>>()?;
    let (best, &estimate) = ratios
        .iter()
        .enumerate()
        .fold((0, &ratios[0]), |acc, (i, v)| if *v > *acc.1 { (i, v) } else { acc });
    Ok(MultiplierEstimate {
        estimate,
        argmax: corpus[best].label().to_string(),
        corpus: corpus.iter().map(|f| f.label().to_string()).collect(),
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcrep::{make_bump, make_gaussian, make_gaussian_at, make_indicator, GridSpec};
    use crate::spectral::{band_limit, modulate};

    fn grid() -> GridSpec {
        GridSpec::new(16, 256).unwrap()
    }

    fn theta(s: f64) -> WeightSpec {
        WeightSpec::polynomial(s).unwrap()
    }

    #[test]
    fn space_spec_parsing() {
        let s: SpaceSpec = "p=3,q=2,r=1,w1=poly:2,w2=poly:1".parse().unwrap();
        assert_eq!((s.p(), s.q(), s.r()), (3.0, 2.0, 1.0));
        assert_eq!(s.theta1(), &theta(2.0));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json.parse::<SpaceSpec>().unwrap(), s);
        assert!("p=0.5,q=2,r=1".parse::<SpaceSpec>().is_err());
        assert!("p=2,q=2".parse::<SpaceSpec>().is_err());
        assert!(SpaceSpec::unweighted(2.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn zero_has_zero_norm() {
        let s = SpaceSpec::unweighted(2.0, 2.0, 2.0).unwrap();
        let z = SampledFunction::<f64>::zeros(grid());
        assert_eq!(a_norm(&z, &s).unwrap().total, 0.0);
    }

    #[test]
    fn integer_modulation_permutes_frequency_cells() {
        let s = SpaceSpec::new(2.0, 2.0, 2.0, theta(1.0), WeightSpec::unit()).unwrap();
        let f = make_gaussian::<f64>(grid()).unwrap();
        let a = a_norm(&f, &s).unwrap().total;
        let b = a_norm(&modulate(&f, 3.0), &s).unwrap().total;
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn chain_examples() {
        let g = grid();
        let s = SpaceSpec::unweighted(2.0, 2.0, 2.0).unwrap();
        let chi = make_indicator::<f64>(0.0, 1.0, g).unwrap();
        let rep = algebra_chain_check(&chi, &chi, &s).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.links[2].lhs <= rep.links[2].rhs);
        let s = SpaceSpec::new(2.0, 2.0, 2.0, theta(1.0), theta(1.0)).unwrap();
        let gauss = make_gaussian::<f64>(g).unwrap();
        let bump = make_bump::<f64>(0.0, 0.5, g).unwrap();
        assert!(algebra_chain_check(&gauss, &bump, &s).unwrap().pass);
        let z = SampledFunction::zeros(g);
        let rep = algebra_chain_check(&z, &gauss, &s).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs, 0.0);
    }

    #[test]
    fn module_examples() {
        let g = grid();
        let gauss = make_gaussian::<f64>(g).unwrap();
        let bump = make_bump::<f64>(0.0, 0.5, g).unwrap();
        let s = SpaceSpec::new(2.0, 2.0, 2.0, theta(1.0), theta(1.0))
            .unwrap()
            .with_module_weight(theta(2.0));
        let rep = module_check(&gauss, &bump, &s).unwrap();
        assert!(rep.pass, "{rep:?}");
        let bad = SpaceSpec::new(2.0, 2.0, 2.0, theta(2.0), theta(1.0))
            .unwrap()
            .with_module_weight(theta(1.0));
        assert!(matches!(
            module_check(&gauss, &bump, &bad),
            Err(AmalgamError::HypothesisViolation(_))
        ));
        let z = SampledFunction::zeros(g);
        let rep = module_check(&gauss, &z, &s).unwrap();
        assert_eq!(rep.ratio, 0.0);
        assert!(rep.pass);
    }

    #[test]
    fn measure_convolution_examples() {
        let g = grid();
        let chi = make_indicator::<f64>(0.0, 1.0, g).unwrap();
        assert_eq!(measure_convolve(&DiscreteMeasure::dirac(0.0), &chi).unwrap().values(), chi.values());
        let shifted = measure_convolve(&DiscreteMeasure::dirac(1.0), &chi).unwrap();
        assert_eq!(shifted.values(), make_indicator::<f64>(1.0, 2.0, g).unwrap().values());
        let mu = DiscreteMeasure::default()
            .with_atom(0.0, Complex::new(0.5, 0.0))
            .with_atom(1.0, Complex::new(0.5, 0.0));
        let out = measure_convolve(&mu, &chi).unwrap();
        let both = make_indicator::<f64>(0.0, 2.0, g).unwrap();
        for (a, b) in out.values().iter().zip(both.values()) {
            assert_eq!(a.re, 0.5 * b.re);
        }
        let json = r#"{"atoms":[{"x":0.0,"c":[1.0,0.0]}]}"#;
        let parsed: DiscreteMeasure = serde_json::from_str(json).unwrap();
        assert_eq!(parsed, DiscreteMeasure::dirac(0.0));
    }

    #[test]
    fn multiplier_estimates() {
        let g = GridSpec::new(16, 64).unwrap();
        let s = SpaceSpec::new(1.0, 2.0, 2.0, theta(1.0), WeightSpec::unit()).unwrap();
        let corpus: Vec<_> = [
            make_gaussian::<f64>(g).unwrap(),
            make_gaussian_at::<f64>(-1.0, 0.5, g).unwrap(),
            make_gaussian_at::<f64>(0.0, 2.0, g).unwrap(),
        ]
        .iter()
        .map(|f| band_limit(f, 8.0).unwrap())
        .collect();
        let d0 = multiplier_norm_estimate(&DiscreteMeasure::dirac(0.0), &s, &corpus).unwrap();
        assert!(d0.estimate >= 1.0);
        let d2 = multiplier_norm_estimate(&DiscreteMeasure::dirac(0.0).scaled(2.0), &s, &corpus).unwrap();
        assert!((d2.estimate - 2.0 * d0.estimate).abs() <= 1e-12 * d0.estimate);
        let y = 3.0;
        let dy = multiplier_norm_estimate(&DiscreteMeasure::dirac(y), &s, &corpus).unwrap();
        assert!(dy.estimate <= theta(1.0).eval(y).unwrap() * d0.estimate * (1.0 + 1e-9));
        let empty: Vec<SampledFunction<f64>> = vec![];
        assert!(matches!(
            multiplier_norm_estimate(&DiscreteMeasure::dirac(0.0), &s, &empty),
            Err(AmalgamError::EmptyCorpus)
        ));
    }
}
