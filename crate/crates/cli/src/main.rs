//! `sa2`: batch front end for certification, validation and spectral runs.

mod commands;
mod config;
mod exit;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig};
use exit::CliError;

fn run() -> Result<(), CliError> {
    let (kind, flags) = Cli::parse().command.split();
    let cfg = RunConfig::new(kind, &flags).map_err(CliError::parse)?;
    let outcome = commands::run(&cfg, &flags.input)?;
    output::emit(flags.output.as_deref(), &outcome.text)?;
    outcome.failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
