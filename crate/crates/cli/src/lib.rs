//! Command-line front end for `lpbesov`.
//!
//! [`parse_and_dispatch`] returns the process exit code: 0 on success, 2
//! for invalid flags or parameters outside an operation's domain, 1 for
//! failures while running.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod commands;
pub mod report;

pub use report::{emit_report, format_float, Record, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<lpbesov::Error> for CliError {
    fn from(e: lpbesov::Error) -> Self {
        if e.is_precondition() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Runtime(e.to_string())
        }
    }
}

/// Thread count from `LPBESOV_THREADS`, if set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LPBESOV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("LPBESOV_THREADS must be a positive integer, got '{raw}'")))?;
    // a pool built earlier in the same process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match configure_threads().and_then(|_| commands::run(&cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            let kind = if e.exit_code() == 2 { "invalid input" } else { "error" };
            eprintln!("lpbesov: {kind}: {e}");
            e.exit_code()
        }
    }
}
