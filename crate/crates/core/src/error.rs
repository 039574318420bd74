//! Error type shared by every module of the crate.

use thiserror::Error;

/// Conditions of the extension constructor that a caller-supplied partition can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionCondition {
    /// Some element of the down-set is not strictly below some element of the up-set.
    DownBelowUp,
    /// Some incomparable element lies below an element of the down-set.
    ZeroBelowDown,
    /// Some incomparable element lies above an element of the up-set.
    ZeroAboveUp,
    /// The three sets are not pairwise disjoint.
    NotDisjoint,
}

impl std::fmt::Display for PartitionCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let text = match self {
            PartitionCondition::DownBelowUp => "I: every lower element must be below every upper element",
            PartitionCondition::ZeroBelowDown => "II: no incomparable element may lie below a lower element",
            PartitionCondition::ZeroAboveUp => "III: no incomparable element may lie above an upper element",
            PartitionCondition::NotDisjoint => "IV: the three sets must be pairwise disjoint",
        };
        f.write_str(text)
    }
}

/// Errors reported by constructors and decision procedures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation contains a cycle through elements {0} and {1}")]
    Cycle(usize, usize),
    #[error("element index {index} out of range for a poset of size {n}")]
    ElementOutOfRange { index: usize, n: usize },
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("size {n} exceeds the guard limit {limit}")]
    Size { n: usize, limit: usize },
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("strategy revised the image of element {0}")]
    Strategy(usize),
    #[error("word set is not prefix-free: {0:?} is a prefix of {1:?}")]
    NotPrefixFree(String, String),
    #[error("the two sets are not strictly comparable")]
    NotComparable,
    #[error("the pair is not strictly ordered")]
    NotStrict,
    #[error("invalid interval set: {0}")]
    InvalidIntervals(String),
    #[error("empty input")]
    EmptyInput,
    #[error("functions are defined over different domains")]
    DomainMismatch,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("empty word has no vector image")]
    EmptyWord,
    #[error("length {0} is not a power of two")]
    Length(usize),
    #[error("period {requested} does not divide the period {period} of the set")]
    Period { requested: usize, period: usize },
    #[error("invalid partition, condition {0}")]
    Partition(PartitionCondition),
    #[error("not a valid element: {0}")]
    InvalidElement(String),
    #[error("malformed input: {0}")]
    Format(String),
}

/// Shorthand result type.
pub type Result<T> = std::result::Result<T, Error>;
