use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mismatched quadratic fields: Q(sqrt {left}) vs Q(sqrt {right})")]
    MismatchedField { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field tag {0} is not a square-free integer >= 2")]
    NotSquareFree(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },

    #[error("group kind or shape mismatch: {0}")]
    KindMismatch(String),

    #[error("degenerate window: {0}")]
    DegenerateWindow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("erosion error: {0}")]
    Erosion(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("element budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("provenance mismatch: expected hash {expected}, found {found}")]
    Provenance { expected: String, found: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
