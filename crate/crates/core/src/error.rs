use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simple type {letter}{rank}")]
    InvalidType { letter: String, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not integral")]
    NotIntegral(String),

    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid automorphism type: {0}")]
    InvalidAut(String),

    #[error("construction step {step} out of range (extended diagram has {nodes} nodes)")]
    StepOutOfRange { step: usize, nodes: usize },

    #[error("root list is not a closed subsystem: {0}")]
    NotClosed(String),

    #[error("no admissible r found: {0}")]
    SearchFailure(String),

    #[error("dim p is odd ({0})")]
    OddDimP(usize),

    #[error("identity does not apply to the improper pair a = g")]
    ImproperPair,

    #[error("operation requires the {0} normalization")]
    WrongNormalization(&'static str),

    #[error("r is not admissible: {0}")]
    InvalidRVee(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("reflection in an imaginary root")]
    ImaginaryRoot,

    #[error("non-positive shifted level {0}")]
    NonPositiveLevel(String),

    #[error("coset enumeration did not close within {0}")]
    Unclosed(String),

    #[error("subalgebra has a central torus; only semisimple a is supported here")]
    NotSemisimple,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
