//! Sampled functions on integer-aligned uniform grids.
//!
//! The window `[-L, L)` is split into the unit cells `[n, n + 1)`, each holding
//! `m` samples. Functions are right-continuous at the sample points; where a
//! generator knows the function jumps (indicator edges) the left limit is kept
//! alongside the sample. Cell quadratures are exact on piecewise constant and
//! piecewise linear integrands.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{AmalgamError, Result};
use crate::scalar::Real;

/// Relative mass that may be pushed out of the window by an operation before it
/// is reported as an overflow.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// [`MASS_TOLERANCE`], raised to the FFT rounding floor of the scalar type.
pub fn mass_tolerance<T: Real>() -> T {
    T::lit(MASS_TOLERANCE.max(1024.0 * T::epsilon().as_f64()))
}

/// Uniform grid over `[-L, L)` with `m` samples per unit cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct GridSpec {
    half_width: usize,
    per_cell: usize,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct RawGrid {
    #[serde(rename = "L")]
    half_width: usize,
    #[serde(rename = "m")]
    per_cell: usize,
}

impl TryFrom<RawGrid> for GridSpec {
    type Error = AmalgamError;

    fn try_from(raw: RawGrid) -> Result<Self> {
        GridSpec::new(raw.half_width, raw.per_cell)
    }
}

impl From<GridSpec> for RawGrid {
    fn from(g: GridSpec) -> Self {
        RawGrid {
            half_width: g.half_width,
            per_cell: g.per_cell,
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            half_width: 16,
            per_cell: 256,
        }
    }
}

impl GridSpec {
    /// Time-domain grid: `m` must be a power of two (and at least 2, so the
    /// reciprocal grid is integer aligned).
    pub fn new(half_width: usize, per_cell: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(AmalgamError::InvalidGrid("half width L must be positive".into()));
        }
        if per_cell < 2 || !per_cell.is_power_of_two() {
            return Err(AmalgamError::InvalidGrid(format!(
                "samples per cell m = {per_cell} must be a power of two >= 2"
            )));
        }
        Ok(GridSpec {
            half_width,
            per_cell,
        })
    }

    /// Frequency grid matching the discrete transform of this grid: window
    /// `[-m/2, m/2)` with step `1/(2L)`.
    pub fn reciprocal(&self) -> GridSpec {
        GridSpec {
            half_width: self.per_cell / 2,
            per_cell: 2 * self.half_width,
        }
    }

    /// Same window, twice the resolution.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            half_width: self.half_width,
            per_cell: 2 * self.per_cell,
        }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn per_cell(&self) -> usize {
        self.per_cell
    }

    /// Total sample count `2 L m`.
    pub fn len(&self) -> usize {
        2 * self.half_width * self.per_cell
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn step<T: Real>(&self) -> T {
        T::one() / T::lit(self.per_cell as f64)
    }

    /// Abscissa of sample `k`; `k = len()` is the right window edge.
    pub fn x<T: Real>(&self, k: usize) -> T {
        let offset = k as f64 - (self.half_width * self.per_cell) as f64;
        T::lit(offset / self.per_cell as f64)
    }

    /// Cells `-L .. L`.
    pub fn cells(&self) -> Range<i64> {
        -(self.half_width as i64)..self.half_width as i64
    }

    pub fn contains_cell(&self, n: i64) -> bool {
        self.cells().contains(&n)
    }

    /// Sample indices of cell `n`.
    pub fn cell_range(&self, n: i64) -> Range<usize> {
        let start = (n + self.half_width as i64) as usize * self.per_cell;
        start..start + self.per_cell
    }

    /// Number of grid steps represented by `y`, if `y` is grid aligned.
    pub fn steps_of(&self, what: &'static str, y: f64) -> Result<i64> {
        let scaled = y * self.per_cell as f64;
        let rounded = scaled.round();
        if !y.is_finite() || (scaled - rounded).abs() > 1e-9 * rounded.abs().max(1.0) {
            return Err(AmalgamError::Misaligned { what, value: y });
        }
        Ok(rounded as i64)
    }

    /// Sample index of the grid-aligned point `x` (`len()` for the right edge).
    pub fn index_of(&self, what: &'static str, x: f64) -> Result<usize> {
        let steps = self.steps_of(what, x)? + (self.half_width * self.per_cell) as i64;
        if steps < 0 || steps as usize > self.len() {
            return Err(AmalgamError::InvalidArgument(format!(
                "{what} = {x} lies outside the window [-{L}, {L}]",
                L = self.half_width
            )));
        }
        Ok(steps as usize)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} m={}", self.half_width, self.per_cell)
    }
}

/// Real or complex sample value in a JSON function spec.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SampleValue {
    Real(f64),
    Complex([f64; 2]),
}

fn default_scale() -> f64 {
    1.0
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

/// Description of a test function, as it appears in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionSpec {
    /// `exp(-π ((x - center) / scale)²)`
    Gaussian {
        #[serde(default, skip_serializing_if = "is_zero")]
        center: f64,
        #[serde(default = "default_scale", skip_serializing_if = "is_one")]
        scale: f64,
    },
    /// Characteristic function of `[a, b)`.
    Indicator { a: f64, b: f64 },
    /// Mollifier profile of unit integral supported in `[center - radius, center + radius]`.
    Bump { center: f64, radius: f64 },
    Zero,
    /// Raw samples; must match the grid length.
    Samples { values: Vec<SampleValue> },
}

impl FunctionSpec {
    pub fn gaussian() -> Self {
        FunctionSpec::Gaussian {
            center: 0.0,
            scale: 1.0,
        }
    }

    pub fn build<T: Real>(&self, grid: GridSpec) -> Result<SampledFunction<T>> {
        match *self {
            FunctionSpec::Gaussian { center, scale } => make_gaussian_at(center, scale, grid),
            FunctionSpec::Indicator { a, b } => make_indicator(a, b, grid),
            FunctionSpec::Bump { center, radius } => make_bump(center, radius, grid),
            FunctionSpec::Zero => Ok(SampledFunction::zeros(grid)),
            FunctionSpec::Samples { ref values } => {
                let values = values
                    .iter()
                    .map(|v| match *v {
                        SampleValue::Real(re) => Complex::new(T::lit(re), T::zero()),
                        SampleValue::Complex([re, im]) => Complex::new(T::lit(re), T::lit(im)),
                    })
                    .collect();
                SampledFunction::from_samples(grid, values, "samples")
            }
        }
    }

    /// Whether the function can be regenerated exactly on a finer grid.
    pub fn is_generator(&self) -> bool {
        !matches!(self, FunctionSpec::Samples { .. })
    }

    /// Whether the function is smooth (no jumps).
    pub fn is_smooth(&self) -> bool {
        matches!(
            self,
            FunctionSpec::Gaussian { .. } | FunctionSpec::Bump { .. } | FunctionSpec::Zero
        )
    }

    fn translated(&self, y: f64) -> Option<FunctionSpec> {
        match *self {
            FunctionSpec::Gaussian { center, scale } => Some(FunctionSpec::Gaussian {
                center: center + y,
                scale,
            }),
            FunctionSpec::Indicator { a, b } => Some(FunctionSpec::Indicator { a: a + y, b: b + y }),
            FunctionSpec::Bump { center, radius } => Some(FunctionSpec::Bump {
                center: center + y,
                radius,
            }),
            FunctionSpec::Zero => Some(FunctionSpec::Zero),
            FunctionSpec::Samples { .. } => None,
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Gaussian { center, scale } if *center == 0.0 && *scale == 1.0 => {
                write!(f, "gaussian")
            }
            FunctionSpec::Gaussian { center, scale } => write!(f, "gaussian:{center}:{scale}"),
            FunctionSpec::Indicator { a, b } => write!(f, "indicator:{a}:{b}"),
            FunctionSpec::Bump { center, radius } => write!(f, "bump:{center}:{radius}"),
            FunctionSpec::Zero => write!(f, "zero"),
            FunctionSpec::Samples { values } => write!(f, "samples[{}]", values.len()),
        }
    }
}

/// Parses `gaussian`, `gaussian:<center>:<scale>`, `indicator:<a>:<b>`,
/// `bump:<center>:<radius>`, `zero`, or a JSON function object.
impl FromStr for FunctionSpec {
    type Err = AmalgamError;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| AmalgamError::Parse(e.to_string()));
        }
        let mut parts = text.split(':');
        let kind = parts.next().unwrap_or_default();
        let nums: Vec<f64> = parts
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| AmalgamError::Parse(format!("function `{text}`: bad number `{p}`")))
            })
            .collect::<Result<_>>()?;
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(AmalgamError::Parse(format!(
                    "function `{text}`: expected {n} parameters"
                )))
            }
        };
        match kind {
            "gaussian" if nums.is_empty() => Ok(FunctionSpec::gaussian()),
            "gaussian" => arity(2).map(|_| FunctionSpec::Gaussian {
                center: nums[0],
                scale: nums[1],
            }),
            "indicator" => arity(2).map(|_| FunctionSpec::Indicator { a: nums[0], b: nums[1] }),
            "bump" => arity(2).map(|_| FunctionSpec::Bump {
                center: nums[0],
                radius: nums[1],
            }),
            "zero" => arity(0).map(|_| FunctionSpec::Zero),
            other => Err(AmalgamError::Parse(format!("unknown function kind `{other}`"))),
        }
    }
}

/// Complex samples on a [`GridSpec`], zero outside the window.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction<T> {
    grid: GridSpec,
    values: Vec<Complex<T>>,
    /// Left limits at sample indices `1..=len` where they differ from the
    /// sample value (index `len` is the right window edge, where the value is 0).
    jumps: BTreeMap<usize, Complex<T>>,
    label: String,
    origin: Option<FunctionSpec>,
}

/// Region of integration for [`SampledFunction::quadrature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Cell(i64),
    Window,
}

impl<T: Real> SampledFunction<T> {
    pub fn zeros(grid: GridSpec) -> Self {
        SampledFunction {
            grid,
            values: vec![Complex::new(T::zero(), T::zero()); grid.len()],
            jumps: BTreeMap::new(),
            label: "zero".into(),
            origin: Some(FunctionSpec::Zero),
        }
    }

    pub fn from_samples(grid: GridSpec, values: Vec<Complex<T>>, label: impl Into<String>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(AmalgamError::InvalidArgument(format!(
                "expected {} samples for grid {grid}, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(AmalgamError::InvalidArgument("samples must be finite".into()));
        }
        Ok(SampledFunction {
            grid,
            values,
            jumps: BTreeMap::new(),
            label: label.into(),
            origin: None,
        })
    }

    pub(crate) fn from_parts(
        grid: GridSpec,
        values: Vec<Complex<T>>,
        jumps: BTreeMap<usize, Complex<T>>,
        label: String,
        origin: Option<FunctionSpec>,
    ) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        SampledFunction {
            grid,
            values,
            jumps,
            label,
            origin,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Recorded discontinuities: grid index to left limit.
    pub fn jumps(&self) -> &BTreeMap<usize, Complex<T>> {
        &self.jumps
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Generator the samples came from, if any.
    pub fn origin(&self) -> Option<&FunctionSpec> {
        self.origin.as_ref()
    }

    /// Sample value at index `k`, with the convention that index `len()` is 0.
    pub fn value(&self, k: usize) -> Complex<T> {
        self.values.get(k).copied().unwrap_or_else(Complex::default)
    }

    /// Left limit at index `k` (`0 < k <= len()`).
    pub fn left_limit(&self, k: usize) -> Complex<T> {
        self.jumps.get(&k).copied().unwrap_or_else(|| self.value(k))
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().chain(self.jumps.values()).all(|z| z.im == T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.values
            .iter()
            .chain(self.jumps.values())
            .all(|z| z.re == T::zero() && z.im == T::zero())
    }

    /// Linear interpolation between samples (using left limits at jumps); zero
    /// outside the window.
    pub fn eval_at(&self, x: T) -> Complex<T> {
        let n = self.grid.len();
        let mut pos = (x + T::lit(self.grid.half_width as f64)) * T::lit(self.grid.per_cell as f64);
        let nearest = pos.round();
        if (pos - nearest).abs() <= T::lit(1e-9) * nearest.abs().max(T::one()) {
            pos = nearest;
        }
        if !(pos >= T::zero()) || pos >= T::lit(n as f64) {
            return Complex::default();
        }
        let k = pos.floor().to_usize().unwrap_or(0).min(n - 1);
        let theta = pos - T::lit(k as f64);
        if theta == T::zero() {
            return self.values[k];
        }
        self.values[k] * (T::one() - theta) + self.left_limit(k + 1) * theta
    }

    /// Applies `phi(z, x)` to every sample and every recorded left limit.
    pub fn map(&self, phi: impl Fn(Complex<T>, T) -> Complex<T>) -> SampledFunction<T> {
        let grid = self.grid;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &z)| phi(z, grid.x(k)))
            .collect();
        let jumps = self
            .jumps
            .iter()
            .map(|(&k, &z)| (k, phi(z, grid.x(k))))
            .collect();
        SampledFunction {
            grid,
            values,
            jumps,
            label: self.label.clone(),
            origin: None,
        }
    }

    pub fn scale(&self, c: Complex<T>) -> SampledFunction<T> {
        let mut out = self.map(|z, _| z * c);
        out.label = format!("({c})·{}", self.label);
        out
    }

    pub fn scale_real(&self, c: T) -> SampledFunction<T> {
        self.scale(Complex::new(c, T::zero()))
    }

    /// `a·self + b·other` on a shared grid.
    pub fn combine(&self, a: Complex<T>, other: &SampledFunction<T>, b: Complex<T>) -> Result<SampledFunction<T>> {
        if self.grid != other.grid {
            return Err(AmalgamError::InvalidArgument(format!(
                "grid mismatch: {} vs {}",
                self.grid, other.grid
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| u * a + v * b)
            .collect();
        let mut jumps = BTreeMap::new();
        for &k in self.jumps.keys().chain(other.jumps.keys()) {
            jumps.insert(k, self.left_limit(k) * a + other.left_limit(k) * b);
        }
        Ok(SampledFunction {
            grid: self.grid,
            values,
            jumps,
            label: format!("{}+{}", self.label, other.label),
            origin: None,
        })
    }

    pub fn sub(&self, other: &SampledFunction<T>) -> Result<SampledFunction<T>> {
        let one = Complex::new(T::one(), T::zero());
        self.combine(one, other, -one)
    }

    pub fn add(&self, other: &SampledFunction<T>) -> Result<SampledFunction<T>> {
        let one = Complex::new(T::one(), T::zero());
        self.combine(one, other, one)
    }

    /// Pointwise product on a shared grid.
    pub fn mul(&self, other: &SampledFunction<T>) -> Result<SampledFunction<T>> {
        if self.grid != other.grid {
            return Err(AmalgamError::InvalidArgument(format!(
                "grid mismatch: {} vs {}",
                self.grid, other.grid
            )));
        }
        let values = self.values.iter().zip(&other.values).map(|(&u, &v)| u * v).collect();
        let mut jumps = BTreeMap::new();
        for &k in self.jumps.keys().chain(other.jumps.keys()) {
            jumps.insert(k, self.left_limit(k) * other.left_limit(k));
        }
        Ok(SampledFunction {
            grid: self.grid,
            values,
            jumps,
            label: format!("{}·{}", self.label, other.label),
            origin: None,
        })
    }

    /// Zero extension to the larger window `[-half_width, half_width)`.
    pub fn widen(&self, half_width: usize) -> Result<SampledFunction<T>> {
        let old = self.grid.half_width;
        if half_width < old {
            return Err(AmalgamError::InvalidGrid(format!(
                "cannot widen L = {old} to L = {half_width}"
            )));
        }
        let grid = GridSpec::new(half_width, self.grid.per_cell)?;
        let offset = (half_width - old) * self.grid.per_cell;
        let mut values = vec![Complex::default(); grid.len()];
        values[offset..offset + self.values.len()].copy_from_slice(&self.values);
        let mut jumps: BTreeMap<usize, Complex<T>> = self.jumps.iter().map(|(&k, &z)| (k + offset, z)).collect();
        let right = offset + self.values.len();
        if half_width > old && !jumps.contains_key(&right) {
            let edge = self.left_limit(self.values.len());
            if edge != Complex::default() {
                jumps.insert(right, edge);
            }
        }
        if offset > 0 && self.values[0] != Complex::default() {
            jumps.entry(offset).or_insert_with(Complex::default);
        }
        Ok(SampledFunction {
            grid,
            values,
            jumps,
            label: self.label.clone(),
            origin: self.origin.clone(),
        })
    }

    /// Restriction to `[a, b)` (grid-aligned).
    pub fn restrict(&self, a: f64, b: f64) -> Result<SampledFunction<T>> {
        let mask = make_indicator::<T>(a, b, self.grid)?;
        Ok(self.mul(&mask)?.with_label(format!("{}|[{a},{b})", self.label)))
    }

    /// Trapezoid rule for `∫ phi(f(x_k), k) dx` over cell `n`, where `k` is
    /// the sample index. Each cell is closed on the right by the left limit at
    /// `n + 1`, so cells partition the window without double counting.
    pub fn cell_integral(&self, n: i64, phi: impl Fn(Complex<T>, usize) -> T) -> T {
        let range = self.grid.cell_range(n);
        let (s, e) = (range.start, range.end);
        let half = T::lit(0.5);
        let mut acc = half * phi(self.values[s], s);
        for k in s + 1..e {
            acc = acc + phi(self.values[k], k);
        }
        acc = acc + half * phi(self.left_limit(e), e);
        for (&k, &limit) in self.jumps.range(s + 1..e) {
            acc = acc + half * (phi(limit, k) - phi(self.values[k], k));
        }
        acc * self.grid.step::<T>()
    }

    /// Supremum of `phi` over cell `n`: the samples and the left limits inside
    /// the cell, including the limit at its right end.
    pub fn cell_sup(&self, n: i64, phi: impl Fn(Complex<T>, usize) -> T) -> T {
        let range = self.grid.cell_range(n);
        let (s, e) = (range.start, range.end);
        let mut best = T::zero();
        for k in s..e {
            best = best.max(phi(self.values[k], k));
        }
        best = best.max(phi(self.left_limit(e), e));
        for (&k, &limit) in self.jumps.range(s + 1..e) {
            best = best.max(phi(limit, k));
        }
        best
    }

    /// Trapezoid quadrature of the function itself.
    pub fn quadrature(&self, region: Region) -> Result<Complex<T>> {
        let cells: Vec<i64> = match region {
            Region::Cell(n) if self.grid.contains_cell(n) => vec![n],
            Region::Cell(n) => {
                return Err(AmalgamError::InvalidArgument(format!(
                    "cell {n} outside window {}",
                    self.grid
                )))
            }
            Region::Window => self.grid.cells().collect(),
        };
        let mut acc = Complex::new(T::zero(), T::zero());
        for n in cells {
            let re = self.cell_integral(n, |z, _| z.re);
            let im = self.cell_integral(n, |z, _| z.im);
            acc = acc + Complex::new(re, im);
        }
        Ok(acc)
    }

    /// `h Σ |f_k|`, the mass used for window-overflow checks.
    pub fn mass(&self) -> T {
        let sum = self.values.iter().fold(T::zero(), |acc, z| acc + z.norm());
        sum * self.grid.step::<T>()
    }

    /// Same window, doubled resolution. Generator-backed functions are
    /// resampled; others are linearly interpolated.
    pub fn refine(&self) -> Result<SampledFunction<T>> {
        let fine = self.grid.refined();
        if let Some(origin) = &self.origin {
            let mut out = origin.build::<T>(fine)?;
            out.label = self.label.clone();
            return Ok(out);
        }
        let n = self.grid.len();
        let half = T::lit(0.5);
        let mut values = Vec::with_capacity(2 * n);
        for k in 0..n {
            values.push(self.values[k]);
            values.push((self.values[k] + self.left_limit(k + 1)) * half);
        }
        let jumps = self.jumps.iter().map(|(&k, &z)| (2 * k, z)).collect();
        Ok(SampledFunction {
            grid: fine,
            values,
            jumps,
            label: self.label.clone(),
            origin: None,
        })
    }

    /// Exact index shift by `steps` samples, failing if more than the
    /// tolerated mass leaves the window.
    pub(crate) fn shift(&self, steps: i64) -> Result<SampledFunction<T>> {
        let n = self.grid.len() as i64;
        let h = self.grid.step::<T>();
        let mut values = vec![Complex::default(); n as usize];
        let mut lost = T::zero();
        for (k, &z) in self.values.iter().enumerate() {
            let target = k as i64 + steps;
            if (0..n).contains(&target) {
                values[target as usize] = z;
            } else {
                lost = lost + z.norm() * h;
            }
        }
        let mut jumps = BTreeMap::new();
        for (&k, &z) in &self.jumps {
            let target = k as i64 + steps;
            if (1..=n).contains(&target) {
                jumps.insert(target as usize, z);
            } else {
                lost = lost + z.norm() * h * T::lit(0.5);
            }
        }
        let total = self.mass();
        if lost > mass_tolerance::<T>() * total {
            return Err(AmalgamError::WindowOverflow { lost: lost.as_f64() });
        }
        Ok(SampledFunction {
            grid: self.grid,
            values,
            jumps,
            label: self.label.clone(),
            origin: None,
        })
    }

    pub(crate) fn set_origin_translated(&mut self, source: &SampledFunction<T>, y: f64) {
        self.origin = source.origin.as_ref().and_then(|o| o.translated(y));
    }
}

pub fn make_indicator<T: Real>(a: f64, b: f64, grid: GridSpec) -> Result<SampledFunction<T>> {
    if !(a < b) {
        return Err(AmalgamError::InvalidArgument(format!(
            "indicator needs a < b (got [{a}, {b}))"
        )));
    }
    let ka = grid.index_of("indicator start", a)?;
    let kb = grid.index_of("indicator end", b)?;
    let one = Complex::new(T::one(), T::zero());
    let mut values = vec![Complex::default(); grid.len()];
    for v in &mut values[ka..kb] {
        *v = one;
    }
    let mut jumps = BTreeMap::new();
    if ka > 0 {
        jumps.insert(ka, Complex::default());
    }
    jumps.insert(kb, one);
    Ok(SampledFunction::from_parts(
        grid,
        values,
        jumps,
        format!("indicator[{a},{b})"),
        Some(FunctionSpec::Indicator { a, b }),
    ))
}

/// `exp(-π x²)`.
pub fn make_gaussian<T: Real>(grid: GridSpec) -> Result<SampledFunction<T>> {
    make_gaussian_at(0.0, 1.0, grid)
}

pub fn make_gaussian_at<T: Real>(center: f64, scale: f64, grid: GridSpec) -> Result<SampledFunction<T>> {
    if !(scale > 0.0 && scale.is_finite() && center.is_finite()) {
        return Err(AmalgamError::InvalidArgument(format!(
            "gaussian needs finite center and positive scale (got {center}, {scale})"
        )));
    }
    let (c, s) = (T::lit(center), T::lit(scale));
    let values = (0..grid.len())
        .map(|k| {
            let u = (grid.x::<T>(k) - c) / s;
            Complex::new((-T::PI() * u * u).exp(), T::zero())
        })
        .collect();
    let label = if center == 0.0 && scale == 1.0 {
        "gaussian".to_string()
    } else {
        format!("gaussian({center},{scale})")
    };
    Ok(SampledFunction::from_parts(
        grid,
        values,
        BTreeMap::new(),
        label,
        Some(FunctionSpec::Gaussian { center, scale }),
    ))
}

/// Standard mollifier `exp(-1 / (1 - u²))`, `u = (x - center) / radius`,
/// rescaled to unit trapezoid integral.
pub fn make_bump<T: Real>(center: f64, radius: f64, grid: GridSpec) -> Result<SampledFunction<T>> {
    let h = 1.0 / grid.per_cell() as f64;
    if !(radius >= 2.0 * h) {
        return Err(AmalgamError::InvalidArgument(format!(
            "bump radius {radius} is below two grid steps ({})",
            2.0 * h
        )));
    }
    let l = grid.half_width() as f64;
    if center - radius < -l || center + radius > l {
        return Err(AmalgamError::InvalidArgument(format!(
            "bump support [{}, {}] leaves the window",
            center - radius,
            center + radius
        )));
    }
    let (c, r) = (T::lit(center), T::lit(radius));
    let values: Vec<Complex<T>> = (0..grid.len())
        .map(|k| {
            let u = (grid.x::<T>(k) - c) / r;
            let q = T::one() - u * u;
            let v = if q > T::zero() { (-T::one() / q).exp() } else { T::zero() };
            Complex::new(v, T::zero())
        })
        .collect();
    let raw = SampledFunction::from_parts(grid, values, BTreeMap::new(), String::new(), None);
    let total = raw.quadrature(Region::Window)?.re;
    let values = raw.values.iter().map(|z| *z / total).collect();
    Ok(SampledFunction::from_parts(
        grid,
        values,
        BTreeMap::new(),
        format!("bump({center},{radius})"),
        Some(FunctionSpec::Bump { center, radius }),
    ))
}
