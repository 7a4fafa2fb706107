use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input value (coordinate out of range, length mismatch, unknown concept).
    #[error("input error: {0}")]
    Input(String),

    /// The operation is undefined for this input (e.g. a measure of the empty class).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric parameter is outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The result would not fit the single-word concept representation.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A numeric search failed to bracket or converge.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// An invariant guaranteed by construction was violated. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// Concept-class text could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
