use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// `Check` carries a failed identity with the exponent or element that broke
/// it; the other variants mean a computation could not be carried out or an
/// input could not be decoded.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {0} is not a unit mod 11")]
    BadGaloisExponent(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("requested order {requested} exceeds achievable order {achievable}")]
    PrecisionExceeded { requested: i64, achievable: i64 },
    #[error("rank deficiency at order {order}: kernel dimension {kernel_dim}")]
    RankDeficient { order: i64, kernel_dim: usize },
    #[error("inconsistent overdetermined system at order {order}")]
    Inconsistent { order: i64 },
    #[error("series has no invertible leading term")]
    NotInvertible,
    #[error("{0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
