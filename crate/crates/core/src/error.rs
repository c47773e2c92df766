use thiserror::Error;

/// Errors raised across the crate.
///
/// An unbounded symbol is only an error for operations that need a finite
/// operator norm; classification itself reports it as a verdict.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("system is inconsistent (relative residual {residual:e})")]
    Inconsistent { residual: f64 },

    #[error("composition operator is unbounded")]
    Unbounded,

    #[error("value out of double-precision range: {0}")]
    Range(String),

    #[error("basis too large: {size} elements exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
