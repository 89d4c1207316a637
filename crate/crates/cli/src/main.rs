//! `snspec`: exact certificates for the coset theorem on k-intersecting
//! families of permutations.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 only when an
//! instance contradicts a certified result.

mod args;
mod caps;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use caps::Caps;
use commands::{Failure, Report};

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

fn emit(report: &Report, format: Format) -> Result<(), String> {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => report
            .csv
            .clone()
            .ok_or("csv output is only available for chartab and spectrum")?,
        Format::Text => render::text(&report.json),
    };
    std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if cli.format == Format::Csv && !matches!(cli.command, Command::Chartab { .. } | Command::Spectrum { .. }) {
        eprintln!("error: csv output is only available for chartab and spectrum");
        return ExitCode::from(EXIT_USAGE);
    }
    let caps = match Caps::from_env_value(std::env::var("SNSPEC_MAX_N").ok().as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match commands::run(&cli.command, &caps) {
        Ok(report) => {
            if let Err(msg) = emit(&report, cli.format) {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_USAGE);
            }
            match report.violation {
                Some(msg) => {
                    eprintln!("theorem violation: {msg}");
                    ExitCode::from(EXIT_VIOLATION)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}
