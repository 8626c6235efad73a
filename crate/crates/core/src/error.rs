use thiserror::Error;

/// Errors produced by graph, factorization, and series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),

    #[error("a connected component has an empty root set")]
    EmptyRootSet,

    #[error("a connected component does not have exactly one root")]
    NotSinglyRooted,

    #[error("loops are not allowed for this product")]
    LoopsNotAllowed,

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("factorization is not unique: {0}")]
    FactorizationNotUnique(String),

    #[error("operands belong to different prime registries")]
    RegistryMismatch,

    #[error("no exact quotient exists")]
    NotDivisible,

    #[error("division by the zero series")]
    ZeroDivisor,

    #[error("no root exists: {0}")]
    NoRoot(String),

    #[error("a component exceeds the degree bound {bound} (degree {degree})")]
    TruncationExceeded { degree: usize, bound: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
