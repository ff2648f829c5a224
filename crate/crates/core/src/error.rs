use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("lattice quotient has torsion (invariant factors {0:?})")]
    Torsion(Vec<i64>),

    #[error("action inconsistent with the lattice projection: {0}")]
    Action(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("epsilon is not configured for this group")]
    NotConfigured,

    #[error("element outside the enumerated radius {radius}; enlarge to at least {suggested}")]
    OutOfRadius { radius: u32, suggested: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("DFA symbol {0:?} is not in the group alphabet")]
    SymbolMismatch(String),

    #[error("invalid DFA: {0}")]
    Dfa(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
