use thiserror::Error;

use crate::free_algebra::{Index, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A word that must lie in `Q + Hy` does not end in `y`.
    #[error("word `{0}` is not in H^1 (nonempty and does not end in y)")]
    NotInH1(Word),

    #[error("word `{0}` does not begin with x; L_x^-1 is undefined on it")]
    NotLeftDivisible(Word),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not homogeneous of weight {expected} (found a word of degree {found})")]
    WeightMismatch { expected: usize, found: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("index ({0}) is not admissible: the series diverges")]
    DivergentIndex(Index),

    #[error("word `{0}` is not admissible (expected an element of xHy or the unit)")]
    NonAdmissibleWord(Word),

    #[error("invalid truncation parameters: {0}")]
    InvalidParams(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
