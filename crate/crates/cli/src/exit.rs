//! Exit-code taxonomy.

use std::fmt;

use sa2::Error;

pub const OK: u8 = 0;
pub const PARSE: u8 = 2;
pub const HYPOTHESIS: u8 = 3;
pub const BUDGET: u8 = 4;
pub const PRECISION: u8 = 5;
pub const VALIDATION: u8 = 6;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(PARSE, message)
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(VALIDATION, message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new(PARSE, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn code_of(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::NotUnimodular { .. } | Error::Json(_) => PARSE,
        Error::GlobalFixedPoint { .. }
        | Error::HyperbolicNotFound { .. }
        | Error::NotHyperbolic { .. }
        | Error::DegenerateSeparation
        | Error::EtaOutOfRange { .. } => HYPOTHESIS,
        Error::BallBudgetExceeded { .. }
        | Error::WordCapExceeded { .. }
        | Error::GeneralPositionNotFound { .. }
        | Error::PowerNotFound { .. }
        | Error::ClosureBudgetExceeded { .. }
        | Error::NoConvergence { .. } => BUDGET,
        Error::Indeterminate { .. } | Error::IncompatibleRadicands { .. } => PRECISION,
        Error::ZeroVector
        | Error::Invalid(_)
        | Error::VersionMismatch { .. }
        | Error::CheckFailed { .. } => VALIDATION,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::new(code_of(&e), e.to_string())
    }
}
