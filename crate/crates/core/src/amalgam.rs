//! Weighted amalgam norms `(L^p_w, ℓ^q)` over the unit cells `[n, n + 1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AmalgamError, Result};
use crate::funcrep::{GridSpec, SampledFunction};
use crate::scalar::Real;
use crate::weights::WeightSpec;

/// Lebesgue exponent in `[1, ∞]`. Serialized as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinite)
        } else if p >= 1.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else {
            Err(AmalgamError::InvalidExponent(format!("{p} is not in [1, ∞]")))
        }
    }

    pub fn finite(p: f64) -> Self {
        Exponent::new(p).expect("exponent in [1, ∞)")
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// Value as `f64`, with `∞` mapped to `f64::INFINITY`.
    pub fn value(&self) -> f64 {
        match *self {
            Exponent::Finite(p) => p,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    /// Hölder conjugate `p' = p / (p - 1)`.
    pub fn conjugate(&self) -> Exponent {
        match *self {
            Exponent::Infinite => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinite,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = AmalgamError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinite),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| AmalgamError::Parse(format!("bad exponent `{t}`")))?;
                Exponent::new(p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Exponent::Finite(p) => serializer.serialize_f64(p),
            Exponent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(p) => Exponent::new(p),
            Raw::Text(t) => t.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Per-cell local norms and their `ℓ^q` aggregate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport<T> {
    pub p: Exponent,
    pub q: Exponent,
    pub weight: WeightSpec,
    pub global: T,
    pub locals: BTreeMap<i64, T>,
    #[serde(rename = "L")]
    pub half_width: usize,
    pub m: usize,
    /// Largest local norm on the two edge cells: a proxy for the mass the
    /// window truncation ignores.
    pub tail_bound: T,
}

impl<T: Real> NormReport<T> {
    /// Aggregate of `locals`, recomputed in cell order.
    pub fn recompute_global(&self) -> T {
        aggregate(self.locals.values().copied(), self.q)
    }

    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.half_width, self.m)
    }
}

fn aggregate<T: Real>(locals: impl Iterator<Item = T>, q: Exponent) -> T {
    match q {
        Exponent::Infinite => locals.fold(T::zero(), |acc, v| acc.max(v)),
        Exponent::Finite(q) if q == 1.0 => locals.fold(T::zero(), |acc, v| acc + v),
        Exponent::Finite(q) => {
            let values: Vec<T> = locals.collect();
            let top = values.iter().fold(T::zero(), |acc, &v| acc.max(v));
            if top == T::zero() {
                return top;
            }
            top * root(values.iter().fold(T::zero(), |acc, &v| acc + powered(v / top, q)), q)
        }
    }
}

/// Weight sampled at every grid index `0..=len`.
pub fn weight_samples<T: Real>(w: &WeightSpec, grid: GridSpec) -> Result<Vec<T>> {
    (0..=grid.len()).map(|k| w.eval(grid.x::<T>(k))).collect()
}

fn powered<T: Real>(v: T, p: f64) -> T {
    if p == 1.0 {
        v
    } else if p == 2.0 {
        v * v
    } else {
        v.powf(T::lit(p))
    }
}

fn root<T: Real>(v: T, p: f64) -> T {
    if p == 1.0 {
        v
    } else if p == 2.0 {
        v.sqrt()
    } else {
        v.powf(T::lit(1.0 / p))
    }
}

fn local_with<T: Real>(f: &SampledFunction<T>, n: i64, p: Exponent, ws: &[T]) -> T {
    match p {
        Exponent::Infinite => f.cell_sup(n, |z, k| z.norm() * ws[k]),
        Exponent::Finite(p) if p == 1.0 => f.cell_integral(n, |z, k| z.norm() * ws[k]),
        Exponent::Finite(p) => {
            // scaled by the cell maximum against underflow in the tails
            let top = f.cell_sup(n, |z, k| z.norm() * ws[k]);
            if top == T::zero() {
                return top;
            }
            top * root(f.cell_integral(n, |z, k| powered(z.norm() * ws[k] / top, p)), p)
        }
    }
}

fn check_cell<T: Real>(f: &SampledFunction<T>, n: i64) -> Result<()> {
    if f.grid().contains_cell(n) {
        Ok(())
    } else {
        Err(AmalgamError::InvalidArgument(format!(
            "cell {n} outside window {}",
            f.grid()
        )))
    }
}

/// `‖f w‖_{L^p([n, n+1))}`; for `p = ∞` the maximum over samples and left limits.
pub fn local_norm<T: Real>(f: &SampledFunction<T>, n: i64, p: Exponent, w: &WeightSpec) -> Result<T> {
    check_cell(f, n)?;
    let range = f.grid().cell_range(n);
    let mut ws = vec![T::zero(); f.grid().len() + 1];
    for k in range.start..=range.end {
        ws[k] = w.eval(f.grid().x::<T>(k))?;
    }
    Ok(local_with(f, n, p, &ws))
}

/// Amalgam norm over the window cells; local norms are computed in parallel and
/// reduced in cell order.
pub fn amalgam_norm<T: Real>(f: &SampledFunction<T>, p: Exponent, q: Exponent, w: &WeightSpec) -> Result<NormReport<T>> {
    let grid = f.grid();
    let ws = weight_samples::<T>(w, grid)?;
    let cells: Vec<i64> = grid.cells().collect();
    let values: Vec<T> = cells.par_iter().map(|&n| local_with(f, n, p, &ws)).collect();
    let global = aggregate(values.iter().copied(), q);
    let tail_bound = values[0].max(values[values.len() - 1]);
    Ok(NormReport {
        p,
        q,
        weight: w.clone(),
        global,
        locals: cells.into_iter().zip(values).collect(),
        half_width: grid.half_width(),
        m: grid.per_cell(),
        tail_bound,
    })
}

/// `‖f w‖_{L^p}` over the whole window.
pub fn weighted_lp_norm<T: Real>(f: &SampledFunction<T>, p: Exponent, w: &WeightSpec) -> Result<T> {
    let grid = f.grid();
    let ws = weight_samples::<T>(w, grid)?;
    Ok(match p {
        Exponent::Infinite => grid
            .cells()
            .map(|n| f.cell_sup(n, |z, k| z.norm() * ws[k]))
            .fold(T::zero(), |a, b| a.max(b)),
        Exponent::Finite(p) => {
            let top = grid
                .cells()
                .map(|n| f.cell_sup(n, |z, k| z.norm() * ws[k]))
                .fold(T::zero(), |a, b| a.max(b));
            if top == T::zero() {
                return Ok(top);
            }
            let total = grid
                .cells()
                .map(|n| f.cell_integral(n, |z, k| powered(z.norm() * ws[k] / top, p)))
                .fold(T::zero(), |a, b| a + b);
            top * root(total, p)
        }
    })
}
