//! Command-line front end. [`run`] does all the work and returns the exit
//! status with the text destined for each stream, so it can be driven from
//! tests without spawning a process.
//!
//! Exit status: 0 success, 1 a `check` found violations, 2 usage error,
//! 3 unparseable input file, 4 domain error, 5 I/O error.

mod args;
mod commands;
mod error;

use std::ffi::OsString;
use std::fs;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;
pub use error::{CliError, EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_IO, EXIT_PARSE, EXIT_USAGE};

use args::Command;
use commands::{Defaults, Emitted};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(e: CliError) -> Self {
        Outcome { code: e.code(), stdout: String::new(), stderr: format!("{e}\n") }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            return Outcome::failure(CliError::Usage(first));
        }
    };
    match execute(&cli) {
        Ok(emitted) => deliver(&cli, emitted),
        Err(e) => Outcome::failure(e),
    }
}

fn execute(cli: &Cli) -> Result<Emitted, CliError> {
    let defaults = Defaults::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Points(a) => commands::points(a, &defaults),
        Command::Paradigm(a) => commands::paradigm(a, &defaults),
        Command::Ultraword(a) => commands::ultraword(a),
        Command::Closure(a) => commands::closure(a),
        Command::Decompose(a) => commands::decompose(a, &defaults),
        Command::Signature(a) => commands::signature(a),
        Command::Converse(a) => commands::converse(a),
        Command::St(a) => commands::st(a),
        Command::Check(a) => commands::check(a, &defaults),
    }
}

fn deliver(cli: &Cli, emitted: Emitted) -> Outcome {
    let code = if emitted.check_failed { EXIT_CHECK_FAILED } else { 0 };
    match &cli.output {
        None => Outcome { code, stdout: emitted.text, stderr: String::new() },
        Some(path) => match fs::write(path, &emitted.text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::failure(CliError::Io(format!("{}: {e}", path.display()))),
        },
    }
}
