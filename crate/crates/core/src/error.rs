use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("graph is not reduced")]
    NotReduced,
    #[error("graph still admits an edge-folding")]
    NotFolded,
    #[error("malformed graph document: {0}")]
    Schema(String),
    #[error("graph invariant violated: {0}")]
    InvariantViolation(String),
    #[error("graphs are not comparable under the natural partial order")]
    NotComparable,
    #[error("pair is not elementary")]
    NotElementary,
    #[error("no such edge in the graph")]
    NoSuchEdge,
    #[error("no such vertex in the graph")]
    NoSuchVertex,
    #[error("graph has a vertex of degree greater than two")]
    DegreeTooHigh,
    #[error("graph is not of the form delta(u): {0}")]
    NotRealizable(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("index out of the family's range: {0}")]
    OutOfRange(String),
    #[error("carrier size {0} exceeds the enumeration guard")]
    SizeTooLarge(usize),
    #[error("the consequence predicate is false for this pair")]
    ConsequenceFalse,
    #[error("pair shape not supported by the classifier: {0}")]
    UnsupportedShape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
