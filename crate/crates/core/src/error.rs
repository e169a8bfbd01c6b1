use thiserror::Error;

/// Errors raised by the library.
///
/// `ContractViolation` covers caller mistakes (bad shapes, unsupported inputs);
/// `ResourceCap` is raised when a configured limit is exhausted.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero form")]
    ZeroForm,
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("form is not semistable: {0}")]
    NotSemistable(String),
    #[error("no candidate primes can be derived; supply primes explicitly ({0})")]
    NeedsManualPrimes(String),
}

impl Error {
    /// True for errors caused by an exhausted limit rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
