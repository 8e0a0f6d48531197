use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series are defined over different variable tables")]
    VarTableMismatch,
    #[error("division by a non-unit series (no invertible constant term)")]
    DivisionByNonUnit,
    #[error("unknown variable `{0}`")]
    VariableNotFound(String),
    #[error("`{0}` cannot be used here (q is the distinguished Laurent variable)")]
    ReservedVariable(String),
    #[error("series does not terminate modulo the truncation ideal: {0}")]
    NonTerminatingSeries(String),
    #[error("infinite product argument has negative q-order")]
    NegativeQOrderInInfiniteProduct,
    #[error("substituting for `{0}` would mix in coefficients lost to truncation")]
    UnsoundSubstitution(String),
    #[error("invalid truncation: {0}")]
    InvalidCaps(String),
    #[error("q-exponent is not an integer: {0}")]
    NonIntegerExponent(String),
}

pub type Result<T, E = SeriesError> = std::result::Result<T, E>;
