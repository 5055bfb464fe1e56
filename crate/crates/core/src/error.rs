use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("generator returned a zero diagonal coefficient at order {0}")]
    ZeroDiagonal(usize),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("zero scale factor: {0}")]
    ZeroScale(String),
    #[error("nonconvergent parameters: {0}")]
    NonConvergent(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("|z0| must equal 1")]
    ModulusNotOne,
    #[error("malformed number {0:?}")]
    Parse(String),
}
