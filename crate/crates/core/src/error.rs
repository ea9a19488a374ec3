use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is not a unit multiple of a symmetric polynomial: {0}")]
    NotSymmetrizable(String),

    #[error("polynomial evaluates to {value} at t = 1, expected +1 or -1")]
    EvalNotUnit { value: String },

    #[error("torus knot parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("not of L-space form at exponent {exponent} (coefficient {coefficient}): {reason}")]
    NotLSpaceForm {
        exponent: i64,
        coefficient: String,
        reason: String,
    },

    #[error("invalid staircase exponents: {0}")]
    InvalidStaircase(String),

    #[error("entry ({row}, {col}) violates declared shift {shift}: grading {from} -> {to}")]
    ShiftViolation {
        row: usize,
        col: usize,
        shift: i64,
        from: i64,
        to: i64,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("composition mismatch: codomain of f has dimension {left}, domain of g has dimension {right}")]
    CompositionMismatch { left: usize, right: usize },

    #[error("matrix entry ({row}, {col}) = {value} is not an integer")]
    NonIntegral { row: usize, col: usize, value: String },

    #[error("scalar {0} must be nonzero")]
    ZeroScalar(&'static str),

    #[error("declared shifts must be (+1, -1), got ({plus}, {minus})")]
    ShiftMismatch { plus: String, minus: String },

    #[error("genus 0 profile has no next-to-top grading")]
    DegenerateGenus,

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
