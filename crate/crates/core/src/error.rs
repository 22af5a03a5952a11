use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a documented constraint.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Exhaustive enumeration was asked for more vertices than the configured cap.
    #[error("capacity error: enumeration of n = {n} exceeds the cap of {cap}; import a graph6 corpus instead")]
    Capacity { n: usize, cap: usize },

    /// Malformed graph6 input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A record in an input stream is inconsistent with the rest of the stream.
    #[error("data error at record {index}: {message}")]
    Data { index: usize, message: String },

    /// Power iteration did not reach the requested residual.
    #[error("power iteration did not converge after {iterations} iterations (lambda ~ {lambda}, residual {residual:e})")]
    NonConvergence {
        lambda: f64,
        residual: f64,
        iterations: usize,
        best_iterate: Vec<f64>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
