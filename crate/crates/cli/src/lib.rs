//! Library half of the `casimir-qubit` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! configuration errors, 3 for computation errors.

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] casimir_qubit::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(e) if is_input_error(e) => EXIT_CONFIG,
            _ => EXIT_COMPUTATION,
        }
    }
}

fn is_input_error(e: &casimir_qubit::Error) -> bool {
    use casimir_qubit::Error::*;
    matches!(
        e,
        InvalidGeometry(_) | InvalidMode(_) | InvalidWindow(_) | MasslessSpinor | ZeroFrequency
    )
}

/// Output of one subcommand: the text to write and whether any check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Self { text, failed: false }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed {
            EXIT_CHECK_FAILED
        } else {
            EXIT_OK
        }
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
        return Ok(pool.install(f));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(f())
}

/// Writes the outcome to `out`, or stdout when unset.
pub fn emit(outcome: &Outcome, out: Option<&std::path::Path>) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
