use thiserror::Error;

use crate::operator::Bidegree;

#[derive(Debug, Error)]
pub enum HodgeError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant `{name}` violated: {detail}")]
    Invariant { name: String, detail: String },

    #[error("not polarized at t: {reason}")]
    NotPolarized { reason: String },

    #[error("hard Lefschetz fails on H^{{{},{}}}", bidegree.0, bidegree.1)]
    HardLefschetzFails { bidegree: Bidegree },

    #[error("classes belong to different algebras")]
    MismatchedAlgebras,

    #[error("wrong bidegree: expected {expected}, got {got}")]
    WrongBidegree { expected: String, got: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("requires n=2 (algebra has n={n})")]
    RequiresN2 { n: usize },

    #[error("sample space exhausted: {0}")]
    Exhausted(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HodgeError {
    pub fn invariant(name: &str, detail: impl Into<String>) -> Self {
        HodgeError::Invariant {
            name: name.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HodgeError>;
