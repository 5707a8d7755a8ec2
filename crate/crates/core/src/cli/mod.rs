//! Command-line surface: ingestion, synthetic cohorts, the rolling scan and
//! report files.

mod args;
mod ingest;
mod run;

use std::path::PathBuf;

use thiserror::Error;

use crate::error::HurstError;

pub use args::{Cli, Command, RunArgs, SynthArgs};
pub use ingest::{base_date, business_day, emit_csv, ingest_csv, ingest_dir};
pub use run::{run, synth, InputSource, OutputFormat, RunConfig, RunSummary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("{path}:{line}: malformed row: {reason}")]
    MalformedRow { path: PathBuf, line: u64, reason: String },

    #[error("{path}:{line}: non-positive price")]
    NonPositivePrice { path: PathBuf, line: u64 },

    #[error("duplicate date {date} for instrument {instrument}")]
    DuplicateDate { instrument: String, date: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("window {window}, {method}: {source}")]
    Pipeline { window: usize, method: String, source: HurstError },

    #[error(transparent)]
    Hurst(#[from] HurstError),
}

/// Parses `argv` and runs the selected subcommand, returning the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;

    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(args) => args.into_config().and_then(|cfg| run(&cfg)).map(|summary| print!("{}", summary.text)),
        Command::Synth(args) => args.execute(),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
