use std::fmt;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid relation `{name}`: {reason}")]
    InvalidRelation { name: String, reason: String },

    #[error("invalid constraint language: {0}")]
    InvalidLanguage(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    /// Exhaustive enumeration would visit more than the configured number of assignments.
    #[error("model budget exceeded: 2^{vars} assignments requested, cap is {cap}")]
    ModelBudget { vars: usize, cap: u64 },

    /// Exact subset search over a knowledge base larger than the configured cap.
    #[error("knowledge base too large for exact search: {size} formulas, cap is {cap}")]
    KbBudget { size: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("relation `{0}` is not part of the constraint language")]
    UnknownRelation(String),

    /// A gadget construction produced a formula that does not define its target.
    #[error("construction failed verification: {0}")]
    Construction(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::ModelBudget { .. } | Error::KbBudget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A parse failure in one of the text formats, with a 1-based line number
/// (0 when the error is not tied to a line).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownRelation(String),
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    UnknownFormula(String),
    DanglingRelevant(String),
    Duplicate(String),
    Missing(&'static str),
    Invalid(String),
    Io(String),
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }

    pub fn syntax(line: usize, msg: impl Into<String>) -> Self {
        ParseError::new(line, ParseErrorKind::Syntax(msg.into()))
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownRelation(name) => write!(f, "unknown relation `{name}`"),
            ParseErrorKind::ArityMismatch {
                relation,
                expected,
                found,
            } => write!(
                f,
                "arity mismatch: `{relation}` takes {expected} arguments, got {found}"
            ),
            ParseErrorKind::UnknownFormula(name) => write!(f, "unknown formula `{name}`"),
            ParseErrorKind::DanglingRelevant(name) => {
                write!(f, "relevant formula `{name}` is not in the knowledge base")
            }
            ParseErrorKind::Duplicate(what) => write!(f, "duplicate {what}"),
            ParseErrorKind::Missing(what) => write!(f, "missing {what}"),
            ParseErrorKind::Invalid(msg) => f.write_str(msg),
            ParseErrorKind::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}: {}", self.line, self.kind)
        }
    }
}

impl std::error::Error for ParseError {}
