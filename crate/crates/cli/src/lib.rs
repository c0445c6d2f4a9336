//! Orchestration of the verification suites and report emission for the
//! `vol3` command-line tool.

pub mod claims;
pub mod config;
pub mod report;
pub mod run;

pub use claims::{ClaimSpec, Status, CLAIMS};
pub use config::{Format, RunConfig, Suite, DEFAULT_DEPTH, DEFAULT_SEED};
pub use report::{emit_report, ClaimRecord, Table, TableRow, VerificationReport, SCHEMA_VERSION};
pub use run::run_suite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    /// Process exit code: 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
