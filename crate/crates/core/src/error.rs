use thiserror::Error;

/// Errors produced by the library.
///
/// `Internal` marks a broken invariant (an enumeration or algebra bug), as
/// opposed to bad input; the CLI maps it to its own exit status.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid type spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not a root of {0}")]
    NotARoot(String),
    #[error("elements belong to different root systems")]
    MixedRootSystems,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("orbit action left the key set (item {item}, generator {generator})")]
    OrbitEscape { item: usize, generator: usize },
    #[error("expression is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid representation data: {0}")]
    BadRepresentation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::OrbitEscape { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
