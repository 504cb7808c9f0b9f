//! File formats, run configuration and batch drivers around [`periwave_core`].

use std::fmt;

use periwave_core::Error;

pub mod commands;
pub mod config;
pub mod family;
pub mod io;
pub mod reproduce;
pub mod sweep;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// unreadable files and similar environment failures
    pub const IO: u8 = 1;
    /// parameters outside a family's admissible set, or a rejected configuration
    pub const ADMISSIBILITY: u8 = 2;
    /// a computed quantity missed its tolerance
    pub const TOLERANCE: u8 = 3;
    pub const ABORT: u8 = 4;
}

/// An error carrying the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(exit::ADMISSIBILITY, message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new(exit::IO, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_)
        | Error::Singular(_)
        | Error::Admissibility(_)
        | Error::PeriodTooSmall(_)
        | Error::DegenerateOrbit(_)
        | Error::Unsupported(_)
        | Error::Shape(..)
        | Error::Invalid(_) => exit::ADMISSIBILITY,
        Error::DegeneratePhase(_) | Error::Resolution(_) | Error::Stencil(_) => exit::TOLERANCE,
        Error::Abort { .. } => exit::ABORT,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::new(exit_code(&e), e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::io(e.to_string())
    }
}
