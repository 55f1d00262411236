use std::fmt;

use torsionlab::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    /// A mathematical precondition failed (non-acyclicity, pole).
    Math,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorKind::Parse | ErrorKind::Validation => 1,
            ErrorKind::Math => 2,
            ErrorKind::Internal => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Parse => "parse",
            ErrorKind::Validation => "validation",
            ErrorKind::Math => "math",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub line: Option<usize>,
    pub message: String,
    /// Cohomology dimensions when the failure is non-acyclicity.
    pub h_dims: Option<Vec<usize>>,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            line: None,
            message: message.into(),
            h_dims: None,
        }
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::new(ErrorKind::Parse, message).at_line(line)
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError::new(ErrorKind::Validation, message)
    }

    /// Attaches `line` unless a line is already known.
    pub fn at_line(mut self, line: usize) -> Self {
        self.line.get_or_insert(line);
        self
    }

    pub fn exit_code(&self) -> u8 {
        self.kind.exit_code()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Parse(_) => ErrorKind::Parse,
            Error::Shape(_) | Error::Validation(_) | Error::Basis(_) | Error::Degenerate(_) => {
                ErrorKind::Validation
            }
            Error::NotAcyclic { .. }
            | Error::Pole { .. }
            | Error::DivisionByZero
            | Error::Domain(_)
            | Error::NoSolution => ErrorKind::Math,
            Error::Internal(_) => ErrorKind::Internal,
        };
        let h_dims = match &e {
            Error::NotAcyclic { dims } => Some(dims.clone()),
            _ => None,
        };
        CliError {
            kind,
            line: None,
            message: e.to_string(),
            h_dims,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
