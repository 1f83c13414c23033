use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not a permutation of 0..{0}")]
    NotABijection(usize),

    #[error("tuple length {len} outside 1..={max}")]
    TupleLength { len: usize, max: usize },

    #[error("color table holds rounds 0..={have}, round {need} requested")]
    InsufficientRounds { have: usize, need: usize },

    #[error("letter {0} is not part of the alphabet")]
    UnknownLetter(String),

    #[error("alphabets cannot be identified: {0}")]
    AlphabetMismatch(String),

    #[error("matrix is not of full row rank")]
    RankDeficient,

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: u64 },

    #[error("validation failed ({condition}): {detail}")]
    Validation {
        condition: &'static str,
        detail: String,
    },

    #[error("malformed invariant: {0}")]
    MalformedInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
