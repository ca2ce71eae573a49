use thiserror::Error;

/// Errors surfaced by parsing, enumeration, encoding and catalog handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed program at token {position}: {reason}")]
    MalformedProgram { position: usize, reason: String },

    #[error("enumeration ceiling exceeded: {requested} is not below the ceiling {ceiling}")]
    EnumerationCeilingExceeded { requested: u64, ceiling: u64 },

    #[error("malformed encoding at bit {position}: {reason}")]
    MalformedEncoding { position: usize, reason: String },

    #[error("malformed transformation term `{term}`: {reason}")]
    MalformedTransformation { term: String, reason: String },

    #[error("malformed catalog at line {line}: {reason}")]
    MalformedCatalog { line: usize, reason: String },

    #[error("catalog entry `{entry}` failed verification at bound {bound}: counterexample `{counterexample}`")]
    VerificationFailed {
        entry: String,
        bound: usize,
        counterexample: String,
    },

    #[error("invalid modulus {0}: must be in 2..=16")]
    InvalidModulus(u32),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status for the command line: 1 for a failed check,
    /// 2 for a usage problem, 3 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed { .. } => 1,
            Error::EnumerationCeilingExceeded { .. } | Error::InvalidModulus(_) | Error::Config(_) => 2,
            _ => 3,
        }
    }

    pub(crate) fn malformed(position: usize, reason: impl Into<String>) -> Self {
        Error::MalformedProgram {
            position,
            reason: reason.into(),
        }
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
