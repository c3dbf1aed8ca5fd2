use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad labels, masks out of range, wrong table sizes,
    /// unparsable rationals, r < 2, and similar.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two values that must live over the same finite space do not.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A point-mass table that is not a probability measure.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// An operation that requires a normalized set function
    /// (value 0 at the empty set, 1 at the full set) got one that is not.
    #[error("set function is not normalized: {0}")]
    NotNormalized(String),

    /// An exhaustive enumeration was requested beyond its configured limits.
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    /// The set function admits no dominating probability measure.
    #[error("set function is not dominated by any probability measure")]
    NotDominated,

    /// An operation that requires a lower envelope got something weaker.
    #[error("not a lower envelope: {0}")]
    NotLowerEnvelope(String),

    /// The family of joint measures is empty (infeasible constraints).
    #[error("family of joint measures is empty")]
    EmptyFamily,
}

pub type Result<T> = std::result::Result<T, Error>;
