//! Command-line front end. Every verb writes one JSON (or DOT) artifact;
//! errors go to stderr as a single JSON line.
//!
//! Exit status: 0 success, 1 violation or not-qi verdict with `--strict`,
//! 2 input error, 3 budget exceeded.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::Cli;
use commands::Failure;

fn diagnostic(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            diagnostic("usage", text.lines().next().unwrap_or("bad arguments").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli.verb) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            diagnostic("input", &m);
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            diagnostic("budget", &m);
            ExitCode::from(3)
        }
    }
}
