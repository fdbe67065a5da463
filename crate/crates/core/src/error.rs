use thiserror::Error;

/// Errors raised by the exact pipelines.
///
/// Impossibility results (no avoiding solution, exhausted sweeps) are values,
/// never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid operand: {0}")]
    InvalidOperand(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure_params {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::InvalidParameters(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_params;
