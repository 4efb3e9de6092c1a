use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero vector is not a valid ray")]
    ZeroRay,
    #[error("vector norm is not representable in Q(sqrt2)")]
    NormOutsideField,
    #[error("ray index {0} out of range 1..=33")]
    IndexOutOfRange(usize),
    #[error("catalog must contain {expected} entries, found {found}")]
    CatalogSize { expected: usize, found: usize },
    #[error("symmetrized spinor product vanished")]
    DegenerateState,
    #[error("edge {{{0}, {1}}} lies in more than one triangle")]
    AmbiguousDecomposition(u8, u8),
    #[error("rotation is not orthogonal with determinant +1")]
    NotARotation,
    #[error("rotation maps item {0} outside the catalog")]
    NotClosed(u8),
    #[error("proof replay diverged at step {step}: {reason}")]
    ReplayDivergence { step: usize, reason: String },
    #[error("deleting ray {0} leaves a non-colorable set")]
    NotColorable(u8),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
