use thiserror::Error;

/// Errors produced by the numeral, oracle and codec layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k-bonacci order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("indices must be strictly increasing")]
    UnorderedIndices,

    #[error("length too small: {length} bits cannot hold index {max_index}")]
    LengthTooSmall { length: usize, max_index: usize },

    #[error("oracle bound exceeded: index bound {requested} is above the limit of {limit}")]
    OracleBoundExceeded { requested: usize, limit: usize },

    #[error("identity domain: requires {requirement}")]
    IdentityDomain { requirement: String },

    #[error("invalid initial terms: {0}")]
    InvalidInitials(String),

    #[error("codec encodes n >= 1")]
    ZeroNotEncodable,

    #[error("truncated codeword")]
    TruncatedCodeword,

    #[error("invalid codeword: {0}")]
    InvalidCodeword(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("corrupt stream: {0}")]
    CorruptStream(String),
}

pub type Result<T> = std::result::Result<T, Error>;
