use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported type/rank {series}{rank}: {valid}")]
    UnsupportedType {
        series: String,
        rank: usize,
        valid: String,
    },

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("group too large: predicted order {predicted} exceeds cap {cap}")]
    GroupTooLarge { predicted: u128, cap: u128 },

    #[error("module too large: dimension {dim} exceeds cap {cap}")]
    ModuleTooLarge { dim: u128, cap: u128 },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("not a root of this system: {0}")]
    NotARoot(String),

    #[error("invalid positive system: {0}")]
    InvalidPositiveSystem(String),

    #[error("invalid W0 subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("character is not Weyl-invariant")]
    NotWeylInvariant,

    #[error("positive-system mismatch between homologies")]
    PositiveSystemMismatch,

    #[error("pairing kind `{kind}` is not defined for this context: {reason}")]
    ContextMismatch { kind: String, reason: String },

    #[error("inexact division in the character ring")]
    InexactDivision,

    /// An identity that must hold for every valid input failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
