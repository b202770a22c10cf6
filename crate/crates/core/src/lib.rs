//! Weighted amalgam spaces `(L^p_w, ℓ^q)` on the real line, Beurling weights,
//! and the convolution algebra `A^{p,1,q,r}_{w1,w2}` of functions in
//! `(L^p_{w1}, ℓ^1)` whose Fourier transform lies in `(L^q_{w2}, ℓ^r)`.
//!
//! Numeric kernels are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to one of the two.

pub mod amalgam;
pub mod decide;
pub mod error;
pub mod funcrep;
pub mod scalar;
pub mod space_a;
pub mod spectral;
pub mod verifier;
pub mod weights;

pub use amalgam::{amalgam_norm, local_norm, weighted_lp_norm, Exponent, NormReport};
pub use error::{AmalgamError, Result};
pub use funcrep::{make_bump, make_gaussian, make_gaussian_at, make_indicator, FunctionSpec, GridSpec, Region, SampledFunction};
pub use scalar::Real;
pub use decide::{decide_compactness, decide_embedding, Relation, Verdict};
pub use space_a::{a_norm, algebra_chain_check, measure_convolve, membership, module_check, multiplier_norm_estimate, ANorm, DiscreteMeasure, SpaceSpec};
pub use spectral::{band_limit, convolve, convolve_cropped, direct_convolve, fourier, inverse_fourier, modulate, translate, FrequencyFunction};
pub use verifier::{Case, SuiteReport};
pub use weights::{bd_condition, check_submultiplicative, dominates, equivalent, WeightFamily, WeightSpec};

pub type SampledFunction64 = SampledFunction<f64>;
pub type SampledFunction32 = SampledFunction<f32>;
pub type NormReport64 = NormReport<f64>;
pub type NormReport32 = NormReport<f32>;
pub type ANorm64 = ANorm<f64>;
pub type ANorm32 = ANorm<f32>;
