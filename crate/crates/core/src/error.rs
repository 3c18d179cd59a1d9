use thiserror::Error;

/// Errors raised by the calculator.
///
/// Variants split into usage errors (malformed or mismatched arguments) and
/// domain errors (inputs outside the mathematical range of the formulas).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation mismatch: {lhs} vs {rhs}")]
    TruncationMismatch { lhs: usize, rhs: usize },

    #[error("coefficient index {index} exceeds truncation {truncation}")]
    IndexOutOfRange { index: usize, truncation: usize },

    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("segment slopes do not strictly decrease")]
    NonDecreasingSlopes,

    #[error("bad vertices: {0}")]
    BadVertices(String),

    #[error("polygons belong to different classes: ({0}, {1}) vs ({2}, {3})")]
    ClassMismatch(u32, i64, u32, i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by inputs outside the domain of the formulas
    /// (as opposed to malformed usage).
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::GenusTooSmall(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
