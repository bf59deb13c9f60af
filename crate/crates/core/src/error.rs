use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one item")]
    EmptyUniverse,

    #[error("item {item} is outside the universe 1..={size}")]
    ItemOutOfRange { item: usize, size: usize },

    #[error("universe mismatch: expected size {expected}, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("position {item} is assigned to more than one row symbol")]
    OverlappingPositions { item: usize },

    #[error("position {item} is not assigned any row symbol")]
    UncoveredPosition { item: usize },

    #[error("an e-group must not be empty")]
    EmptyEgroup,

    #[error("row text, token {position}: {message}")]
    RowText { position: usize, message: String },

    #[error("set family is empty")]
    EmptyFamily,

    #[error("hypergraph edge {index} is empty")]
    EmptyEdge { index: usize },

    #[error("seed {seed} is not a face")]
    NotAFace { seed: String },

    #[error("facets {first} and {second} are comparable")]
    ComparableFacets { first: usize, second: usize },

    #[error("database has no transactions")]
    EmptyDatabase,

    #[error("support threshold must be at least 1")]
    ZeroThreshold,

    #[error("universe of size {size} exceeds the enumeration limit {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("invalid random database spec: {0}")]
    InvalidSpec(String),
}
