use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("breakpoints must be strictly increasing (violated at index {index})")]
    NonMonotone { index: usize },

    #[error("negative value {value} at index {index}")]
    NegativeValue { index: usize, value: f64 },

    #[error("length mismatch: {what}")]
    LengthMismatch { what: String },

    #[error("non-finite number in {what}")]
    NonFinite { what: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("support extends below 0 (starts at {start})")]
    NegativeSupport { start: f64 },

    #[error("function must be nonnegative and nonincreasing on [0, inf): {0}")]
    NotDecreasing(String),

    #[error("function crests {count} times, expected exactly once")]
    NotOneCrest { count: usize },

    #[error("{pieces} pieces exceeds the brute-force budget of {limit}")]
    TooManyPieces { pieces: usize, limit: usize },

    #[error("empty z grid")]
    EmptyGrid,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge after {panels} panels (estimate {estimate:e}, error {error:e})")]
    Convergence {
        panels: usize,
        estimate: f64,
        error: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the CLI: 1 for validation problems, 2 for
    /// numerical convergence failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence { .. } => 2,
            _ => 1,
        }
    }
}

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
