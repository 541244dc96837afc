use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic not prime: {0}")]
    NotPrime(u64),

    #[error("field order {p}^{k} exceeds the desk-scale limit of 2^20 elements")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("no field of this order: {0}")]
    NotPrimePower(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("not a basis: {0}")]
    NotABasis(String),

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: String },

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("order too large for exhaustive equivalence: {0} > 6")]
    OrderTooLarge(usize),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    WrongTrace(f64),

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("basis {basis} is not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { basis: usize, deviation: f64 },

    #[error("incomplete MUB set: {found} bases, need {needed}")]
    IncompleteSet { found: usize, needed: usize },

    #[error("degenerate joint eigenbasis: {0}")]
    DegenerateEigenbasis(String),

    #[error("invalid pencil {pencil} for dimension {n}")]
    InvalidPencil { pencil: usize, n: usize },

    #[error("choice has length {got}, expected {expected}")]
    WrongChoiceLength { got: usize, expected: usize },

    #[error("moment formula out of table: t = {t} > N = {n}")]
    MomentOutOfTable { t: u32, n: usize },

    #[error("tensor space too large: {0} > 4096")]
    TensorSpaceTooLarge(usize),

    #[error("candidate is not a verified SIC (max Gram deviation {0:.3e})")]
    UnverifiedSic(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("expected kind `{expected}`, found `{actual}`")]
    WrongKind { expected: String, actual: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
