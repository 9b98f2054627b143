use thiserror::Error;

use crate::validate::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("validation failed: {0}")]
    Validation(ValidationReport),

    #[error("search budget of {budget} nodes exhausted without a verdict")]
    BudgetExceeded { budget: u64 },

    #[error("closure cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal mismatch between independent computations: {0}")]
    InternalMismatch(String),

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference to {kind} `{name}`")]
    UnresolvedReference { kind: &'static str, name: String },

    #[error("duplicate definition of `{0}`")]
    DuplicateName(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) | Error::Usage(_) => 2,
            Error::Validation(_)
            | Error::MalformedTable(_)
            | Error::UnresolvedReference { .. }
            | Error::DuplicateName(_)
            | Error::EndpointMismatch(_)
            | Error::DomainMismatch(_) => 3,
            Error::BudgetExceeded { .. } | Error::CapExceeded(_) => 4,
            Error::InternalMismatch(_) => 5,
        }
    }
}
