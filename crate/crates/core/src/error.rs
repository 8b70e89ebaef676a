use std::fmt;

use thiserror::Error;

/// A structural problem found while validating an automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationIssue {
    /// Where the problem is, e.g. `transition 3` or `final states`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("letter '{0}' is not in the declared alphabet")]
    UnknownLetter(char),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid automaton: {}", join_issues(.0))]
    Validation(Vec<ValidationIssue>),

    #[error("invalid run: {0}")]
    InvalidRun(String),

    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn budget(what: &'static str, limit: usize) -> Self {
        Error::Budget { what, limit }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
