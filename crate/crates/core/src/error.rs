use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Violations of the [`MonodromyTuple`](crate::MonodromyTuple) invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("no finite singular points (k = 0)")]
    NoFinitePoints,
    #[error("matrix at {point} has shape {rows}x{cols}, expected {rank}x{rank}")]
    Shape {
        point: String,
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("non-invertible matrix at {point}")]
    NonInvertible { point: String },
    #[error("duplicate locations: {location} appears more than once")]
    DuplicateLocation { location: String },
    #[error("trivial local monodromy at finite point {location}")]
    TrivialMonodromy { location: String },
    #[error("monodromy relation violated: A_1 ... A_k A_inf != I")]
    RelationViolated,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid monodromy: {0}")]
    InvalidMonodromy(String),
    #[error("invalid tuple: {0}")]
    Validation(#[from] ValidationError),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(
        "non-realizable minimal pair: sum rank(A_i - I) = {rank_sum} < n + dim ker(A_inf - I) = {required}; tuple cannot be irreducible"
    )]
    NonRealizable { rank_sum: usize, required: usize },
    #[error("theorem hypothesis violated: the tuple is reducible")]
    HypothesisViolated,
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("point index out of range: {index} (k = {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("random generation failed: {0}")]
    Generation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
