//! `rptkit`: command-line front end to the rptkit engines.
//!
//! Output is a JSON document (keys sorted, rationals as strings) or CSV on
//! stdout. Exit status: 0 on success, 1 when an input violates a contract,
//! 2 on I/O or parse failure.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("rptkit: {err}");
            ExitCode::from(match err {
                CliError::Contract(_) => 1,
                CliError::Input(_) => 2,
            })
        }
    }
}
