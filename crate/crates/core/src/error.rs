use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input violates a selection rule or a precondition.
    #[error("validation error: {0}")]
    Validation(String),
    /// Bound states do not exist for the requested parameters.
    #[error("no normalizable bound states: {0}")]
    NoBoundStates(String),
    /// Series or integrator failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A verification check exceeded its tolerance.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
