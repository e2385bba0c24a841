use thiserror::Error;

/// Structured failure modes. Cap overflows are separated from input errors so
/// callers (in particular the CLI) can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("dimension mismatch between operands")]
    DimensionMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("S-pair cap exceeded ({limit} pairs); raise the limit to continue")]
    PairCapExceeded { limit: usize },

    #[error("lattice cell cap exceeded: {cells} cells > limit {limit}")]
    CellCapExceeded { cells: u64, limit: u64 },

    #[error("iteration cap exceeded in {what} (limit {limit})")]
    IterationCapExceeded { what: &'static str, limit: usize },

    #[error("code is not commuting: {0}")]
    NotCommuting(String),

    #[error("not supported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
