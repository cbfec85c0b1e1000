use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("ground set is empty; counting would be degenerate")]
    EmptySet,

    #[error("scalar must be nonzero")]
    ZeroScalar,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("estimated cost {cost} exceeds enumeration budget {budget}; use an optimized engine or raise --budget")]
    BudgetExceeded { cost: String, budget: u64 },

    #[error("{rows} row(s) exceeded enumeration budget {budget} and were reported without a count")]
    BudgetRows { rows: usize, budget: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::BudgetRows { .. } => 3,
            Error::Io { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
