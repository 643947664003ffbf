//! Command-line surface for `pipow-core`: argument handling, the shared π
//! cache, and the text/CSV/JSON renderings of every report.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::io::Write;

pub use commands::{
    cmd_bench, cmd_converge, cmd_expand, cmd_sinc, cmd_sum, cmd_table, cmd_verify_theorem, execute,
};
pub use config::{Cli, Format, ModeChoice, RunConfig, SubcommandKind};

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const REFUSED: u8 = 2;
    pub const INVALID: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Invalid(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => exit::MISMATCH,
            CliError::Refused(_) => exit::REFUSED,
            CliError::Invalid(_) | CliError::Io(_) => exit::INVALID,
        }
    }
}

/// What a subcommand produced: the rendered report, its exit status and
/// any warnings destined for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: u8,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn success(output: String) -> Self {
        Self {
            output,
            exit_code: exit::SUCCESS,
            warnings: Vec::new(),
        }
    }
}

/// Writes the report to `--out` when given, stdout otherwise.
pub fn emit(config: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match &config.out {
        Some(path) => std::fs::write(path, &outcome.output)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.output.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
