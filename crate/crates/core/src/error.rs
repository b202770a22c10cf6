use thiserror::Error;

pub type Result<T, E = AmalgamError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AmalgamError {
    #[error("x = {x} lies outside the tabulated weight grid [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("{what} = {value} is not aligned to the sampling grid")]
    Misaligned { what: &'static str, value: f64 },

    #[error("support leaves the window (mass {lost:e} would be discarded)")]
    WindowOverflow { lost: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("undecidable: {0}")]
    Undecidable(String),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("parse error: {0}")]
    Parse(String),
}

impl AmalgamError {
    /// Errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            AmalgamError::Parse(_)
                | AmalgamError::InvalidWeight(_)
                | AmalgamError::InvalidGrid(_)
                | AmalgamError::InvalidExponent(_)
                | AmalgamError::InvalidArgument(_)
        )
    }
}
