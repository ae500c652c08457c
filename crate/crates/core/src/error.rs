use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("structure constants not well defined: b_{i}*b_{j} has coordinate {l} = {value}, but d_{side} * {value} != 0 mod {modulus}")]
    WellDefined {
        i: usize,
        j: usize,
        l: usize,
        side: usize,
        value: u64,
        modulus: u64,
    },

    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },

    #[error("declared unit is not a two-sided identity (fails against basis element {0})")]
    Unit(usize),

    #[error("ring order {order} exceeds the size guard {limit}")]
    GuardExceeded { order: usize, limit: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("element {0} is not idempotent")]
    NotIdempotent(String),

    #[error("element {0} is a trivial idempotent")]
    TrivialIdempotent(String),

    #[error("invalid element `{0}`")]
    InvalidElement(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arity mismatch: expected {expected} coordinates, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("maps belong to different rings")]
    RingMismatch,

    #[error("search refused: {0}")]
    SearchCap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
