use thiserror::Error;

/// Errors produced while building, querying or loading an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (bound {bound})")]
    OutOfRange { index: u64, bound: u64 },

    #[error("sum of values overflows a 64-bit word")]
    Overflow,

    #[error("empty input where at least one element is required")]
    Empty,

    #[error("keys must be strictly increasing (violated at position {position})")]
    Unsorted { position: usize },

    #[error("key {key} is outside the universe [0, {universe})")]
    KeyOutsideUniverse { key: u64, universe: u64 },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("pattern set is empty")]
    NoPatterns,

    #[error("pattern {index} is empty")]
    EmptyPattern { index: usize },

    #[error("pattern {index} duplicates pattern {first}")]
    DuplicatePattern { index: usize, first: usize },

    #[error("state 0 has no {0} transition")]
    RootTransition(&'static str),

    #[error("internal build error: {0}")]
    Internal(String),

    #[error("corrupt index: {0}")]
    Corrupt(String),

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(index: impl TryInto<u64>, bound: impl TryInto<u64>) -> Error {
    Error::OutOfRange {
        index: index.try_into().unwrap_or(u64::MAX),
        bound: bound.try_into().unwrap_or(u64::MAX),
    }
}
