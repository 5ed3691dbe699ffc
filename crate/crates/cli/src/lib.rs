//! Command-line front end: argument types, the three commands and their
//! table, CSV and JSON renderings.

pub mod args;
pub mod commands;
pub mod report;

use std::fs;
use std::io::Write;

use args::{Cli, Command};
use report::{CliError, Rendered};

pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Verify(a) => commands::verify(a),
        Command::Crosscheck(a) => commands::crosscheck(a),
    }
}

fn output_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Spectrum(a) => a.output.out.as_deref(),
        Command::Verify(a) => a.output.out.as_deref(),
        Command::Crosscheck(a) => a.output.out.as_deref(),
    }
}

/// Runs the command, writes its output and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let rendered = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("galosc: {e}");
            return e.exit_code();
        }
    };
    let written = match output_path(cli) {
        Some(path) => fs::write(path, &rendered.text),
        None => std::io::stdout().lock().write_all(rendered.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("galosc: {}", CliError::from(e));
        return 1;
    }
    if rendered.passed {
        0
    } else {
        eprintln!("galosc: one or more checks failed");
        1
    }
}
