use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("value too large: {what} needs about {bits} bits, limit is {limit}")]
    TooLarge { what: String, bits: u64, limit: u64 },

    #[error("cannot factor {0}: cofactor exceeds the trial division bound")]
    FactorBoundExceeded(String),

    #[error("the anti-partial derivatives of 0 form the infinite set {0}")]
    InfiniteSet(&'static str),

    #[error("{0} has no integral anti-partial derivative")]
    EmptySet(String),

    #[error("{0} is not the primitive anti-partial derivative of its image")]
    NotPrimitive(String),

    #[error("c = {c} is not in the correspondence set of {x0}")]
    NotInCSet { c: String, x0: String },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the CLI and the C ABI status codes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLarge { .. } | Error::FactorBoundExceeded(_) => 3,
            Error::VerificationFailed(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
