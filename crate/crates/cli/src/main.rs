#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, OutputArgs};
use commands::{Failure, Outcome, EXIT_INVARIANT, EXIT_USAGE};

fn run(cli: &Cli) -> Result<(Outcome, &OutputArgs), Failure> {
    Ok(match &cli.command {
        Command::Spectrum(a) => (commands::spectrum(a)?, &a.output),
        Command::Critical(a) => (commands::critical(a)?, &a.output),
        Command::Simulate(a) => (commands::simulate(a)?, &a.output),
        Command::Eigenfunction(a) => (commands::eigenfunction(a)?, &a.output),
    })
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
    match run(&cli) {
        Ok((outcome, out)) => {
            if let Err(e) = output::emit(&outcome.table, &outcome.meta, out.format, out.out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
            for v in &outcome.violations {
                eprintln!("invariant violated: {v}");
            }
            if outcome.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INVARIANT)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
