use std::fmt;

use thiserror::Error;

/// Which weight matrix an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSide {
    /// The m×m weight acting on the row space of `A` (`M` for Wang, `L` for Udwadia).
    Left,
    /// The n×n weight acting on the column space of `A` (`N` for Wang, `M` for Udwadia).
    Right,
}

impl fmt::Display for WeightSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSide::Left => f.write_str("left"),
            WeightSide::Right => f.write_str("right"),
        }
    }
}

/// A positioned parse failure.
///
/// `line` and `column` are 1-based. `expected` lists the token classes that
/// would have been accepted at that position, when the parser knows them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Moves an error produced while parsing a single token to its location in a file.
    pub(crate) fn relocate(mut self, line: usize, column_offset: usize) -> Self {
        self.line = line;
        self.column += column_offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        got: String,
    },

    #[error("index {index} out of range for {op} (limit {limit})")]
    IndexOutOfRange {
        op: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("operation {op} is not supported over the {field} field")]
    UnsupportedField {
        op: &'static str,
        field: &'static str,
    },

    #[error("matrices are over different fields: {expected} vs {got}")]
    FieldMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("{side} weight is not symmetric positive definite{}", .minor.map(|m| format!(" (leading minor {m} not positive)")).unwrap_or_default())]
    WeightNotSpd {
        side: WeightSide,
        minor: Option<usize>,
    },

    #[error("degenerate weight at column {column}: quadratic form vanished")]
    DegenerateWeight { column: usize },

    #[error("degenerate delta at column {column}: zero-branch denominator vanished")]
    DegenerateDelta { column: usize },

    #[error("oracle self-check failed: {0}")]
    OracleInconsistent(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("engines disagree: {0}")]
    EngineMismatch(String),

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => 2,
            Error::WeightNotSpd { .. } => 3,
            Error::DegenerateWeight { .. }
            | Error::DegenerateDelta { .. }
            | Error::SingularMatrix => 4,
            Error::OracleInconsistent(_) => 5,
            Error::EngineMismatch(_) => 6,
            Error::Parse(_)
            | Error::DivisionByZero
            | Error::Io(_)
            | Error::InvalidSpec(_)
            | Error::UnsupportedField { .. }
            | Error::FieldMismatch { .. } => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dims(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}
