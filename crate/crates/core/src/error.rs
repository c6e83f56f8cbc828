use thiserror::Error;

/// Errors raised by input validation, geometry and the cache layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("classically forbidden: {0}")]
    ClassicallyForbidden(String),

    #[error("caustic or degenerate geometry: {0}")]
    CausticDegenerate(String),

    #[error("root finding did not converge (best residual {best_residual:e})")]
    ConvergenceFailure { best_residual: f64 },

    #[error("oracle refused: {0}")]
    TooLarge(String),

    #[error("cache parse error at line {line}: {message}")]
    CacheParse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("config error: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
