use thiserror::Error;

/// Errors raised by kernel operations. Witness tuples are rendered with
/// element identifiers so that messages stand on their own.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("carrier of {0} elements exceeds the supported maximum of {max}", max = crate::bits::MAX_ELEMENTS)]
    CarrierTooLarge(usize),
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),
    #[error("unknown element identifier `{0}`")]
    UnknownElement(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live on different carriers")]
    CarrierMismatch,
    #[error("{what} violated at {witness}")]
    Axiom { what: String, witness: String },
    #[error("precondition failed: {what} (witness {witness})")]
    Precondition { what: String, witness: String },
    #[error("malformed operation table: {0}")]
    MalformedTable(String),
    #[error("size bound exceeded: {what} of size {size} exceeds bound {bound}")]
    SizeBound {
        what: String,
        size: usize,
        bound: usize,
    },
    #[error("unknown property atom `{0}`")]
    UnknownAtom(String),
    #[error("atom `{atom}` does not apply to {scope}")]
    AtomScope { atom: String, scope: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported document format {0}, expected 1")]
    UnsupportedFormat(u64),
    #[error("no {kind} named `{name}` in the document")]
    UnknownName { kind: String, name: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Process exit status: 1 for axiom and precondition failures, 2 for
    /// usage and input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Axiom { .. } | Error::Precondition { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn axiom(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Axiom {
            what: what.into(),
            witness: witness.into(),
        }
    }

    pub(crate) fn precondition(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
