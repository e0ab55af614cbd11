use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid variable: {0}")]
    InvalidVariable(String),
    #[error("genus {0} is not supported here")]
    UnsupportedGenus(u8),
    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("target is not in the module spanned by the generators; residual {residual}")]
    NotInModule { residual: String },
    #[error("decomposition is not unique (kernel dimension {kernel_dim})")]
    AmbiguousDecomposition { kernel_dim: usize },
    #[error("operator {operator} violates the heat-operator shape at term {term}")]
    ShapeViolation { operator: String, term: String },
    #[error("no bracket reduction found for {0}")]
    ReductionNotFound(String),
    #[error("heat system has no nonzero solution on the lowest stratum")]
    EmptyKernel,
    #[error("bracket mismatch beyond the printed tables at {0}")]
    MismatchBeyondTables(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
