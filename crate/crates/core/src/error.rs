use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live over different generator sets")]
    RingMismatch,
    #[error("negative power of non-invertible generator `{0}`")]
    NegativeExponent(String),
    #[error("incompatible tensor legs: {0}")]
    LegKind(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("invalid parameter binding: {0}")]
    Binding(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
