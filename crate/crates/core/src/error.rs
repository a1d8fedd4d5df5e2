use thiserror::Error;

/// Errors raised by the field, phase-space, construction and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element does not belong to GF({p}^{k})")]
    FieldMismatch { p: u32, k: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("input vectors are linearly dependent")]
    LinearlyDependent,

    #[error("ambient mismatch: expected Z_{p}^{expected}, got Z_{got_p}^{got}")]
    AmbientMismatch {
        p: u32,
        expected: usize,
        got_p: u32,
        got: usize,
    },

    #[error("{what} of size {size} exceeds the limit {limit}")]
    Oversize {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("basis is not in standard symplectic form: {0}")]
    NonNormalizedBasis(String),

    #[error("basis shape mismatch: {0}")]
    BasisShape(String),

    #[error("non-commuting basis in member {0}")]
    NonCommuting(String),

    #[error("eigendecomposition stayed degenerate for member {0}")]
    DegenerateSpectrum(String),

    #[error("malformed family file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
