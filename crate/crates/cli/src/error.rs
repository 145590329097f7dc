//! CLI-level errors and their process exit codes.

use std::fmt;
use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, CliError>;

/// Everything the command-line layer can fail with. Exit code 2 marks
/// problems with how the tool was invoked or configured; exit code 1 marks
/// failures while computing or writing results.
#[derive(Debug)]
pub enum CliError {
    /// The configuration document is not well-formed JSON.
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// The configuration parses but a field is missing or invalid.
    Validation { field: String, message: String },
    /// A configuration or fixture file could not be read.
    ConfigIo { path: PathBuf, source: io::Error },
    /// An output file could not be written.
    OutputIo { path: PathBuf, source: io::Error },
    /// A single-point computation failed.
    Compute(dqd_core::Error),
    /// Every requested cell of the sweep failed to compute.
    EmptySweep,
    /// A plot was requested but no series has a single finite point.
    EmptySelection,
    /// Fixture checking found missing keys or out-of-tolerance values.
    FixturesFailed { failures: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::ConfigIo { .. } => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse {
                line,
                column,
                message,
            } => {
                write!(
                    f,
                    "config parse error at line {line}, column {column}: {message}"
                )
            }
            CliError::Validation { field, message } => {
                write!(f, "invalid config field `{field}`: {message}")
            }
            CliError::ConfigIo { path, source } => {
                write!(f, "cannot read {}: {source}", path.display())
            }
            CliError::OutputIo { path, source } => {
                write!(f, "cannot write {}: {source}", path.display())
            }
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
            CliError::EmptySweep => write!(f, "sweep produced no values: every cell failed"),
            CliError::EmptySelection => write!(f, "nothing to plot: no finite data points"),
            CliError::FixturesFailed { failures } => {
                write!(f, "fixture check failed: {failures} mismatch(es)")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<dqd_core::Error> for CliError {
    fn from(e: dqd_core::Error) -> Self {
        CliError::Compute(e)
    }
}
