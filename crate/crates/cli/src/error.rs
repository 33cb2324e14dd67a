use std::fmt;

use expfam_core::Error;

/// Process exit classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Domain,
    Degenerate,
    CheckFailed,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Input => 2,
            ErrorKind::Domain => 3,
            ErrorKind::Degenerate => 4,
            ErrorKind::CheckFailed => 5,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ErrorKind::Input => "input",
            ErrorKind::Domain => "domain",
            ErrorKind::Degenerate => "degenerate-sample",
            ErrorKind::CheckFailed => "check-failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Input,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Domain,
            message: message.into(),
        }
    }

    pub fn check_failed(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::CheckFailed,
            message: message.into(),
        }
    }
}

/// Single line, `error[TAG]: message`.
impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_line = self.message.replace('\n', " ");
        write!(f, "error[{}]: {}", self.kind.tag(), one_line)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let kind = match &err {
            Error::OutOfDomain(_) | Error::CarrierNotZero(_) | Error::CarrierIsZero(_) => {
                ErrorKind::Domain
            }
            Error::DegenerateSample(_) => ErrorKind::Degenerate,
            Error::NotPositiveDefinite { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidOrder(_)
            | Error::FamilyMismatch(..)
            | Error::InvalidSample(_) => ErrorKind::Input,
        };
        let mut message = err.to_string();
        if matches!(err, Error::CarrierNotZero(_)) {
            message.push_str(
                "; `expfam check --quantity entropy` reports it alongside a Monte Carlo estimate",
            );
        }
        Self { kind, message }
    }
}

pub type CliResult<T> = Result<T, CliError>;
