use thiserror::Error;

/// Failure classes shared by every stage of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("maps are not homogeneous of one common degree: {0}")]
    Inhomogeneous(String),

    #[error("degenerate parametrization: {0}")]
    Degenerate(String),

    /// A randomized rank did not stabilize or a sample was not in general position.
    #[error("genericity failure: {0}")]
    GenericityFailure(String),

    /// Two routes to the same quantity disagreed, or a count came out negative.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
