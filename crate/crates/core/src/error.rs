use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("class {0} is not in the cone")]
    NotInCone(String),
    #[error("class {0} is not primitive")]
    NotPrimitive(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("level slices of the cone along coordinate {0} are unbounded")]
    UnboundedSlice(usize),
    #[error("bound must be positive, got {0}")]
    NonPositiveBound(i64),
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no real root greater than 1")]
    NoPerronRoot,
    #[error("precision ceiling of {0} bits reached without certification")]
    PrecisionCeiling(u32),
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }

    /// The innermost error, looking through stage annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
