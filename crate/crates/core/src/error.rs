use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcaError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("capacity exceeded: {qubits} qubits requested, at most {max} supported")]
    Capacity { qubits: usize, max: usize },
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl QcaError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        QcaError::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, QcaError>;
