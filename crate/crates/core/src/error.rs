use thiserror::Error;

use crate::numerics::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("hypernatural label `{0}` was never declared")]
    UnknownLabel(String),

    #[error("index ({i},{j}) is not admissible for interval kind {kind}")]
    InadmissibleIndex { i: String, j: u32, kind: u8 },

    #[error("invalid partition scheme: {0}")]
    InvalidScheme(String),

    #[error("point rule violates partition invariants at ({i},{j}): {reason}")]
    RuleViolation { i: String, j: u32, reason: String },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("malformed frozen segment: {0}")]
    MalformedSegment(String),

    #[error("a conjunction needs at least two distinct members, got {0}")]
    TooFewMembers(usize),

    #[error("segments from `{0}` and `{1}` are not comparable")]
    IncomparableMembers(String, String),

    #[error("two distinct segments share time {0}")]
    TimeCollision(Rational),

    #[error("horizon must be at least 1")]
    ZeroHorizon,

    #[error("truncation parameters not admissible: {0}")]
    InadmissibleTruncation(String),

    #[error("sentence `{0}` is not in the language")]
    UnknownSentence(String),

    #[error("rule with conclusion `{0}` has an empty premise set")]
    EmptyPremises(String),

    #[error("axiom `{0}` collides with an atom or conjunction")]
    AxiomCollision(String),

    #[error("`{0}` is not a perceived sentence")]
    NotPerceived(String),

    #[error("source set must be nonempty")]
    EmptySource,

    #[error("`{0}` already carries the reserved tag")]
    TagCollision(String),

    #[error("{what} has {size} members, limit is {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("value is unlimited (negative ε exponent {0})")]
    Unlimited(i64),

    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}
