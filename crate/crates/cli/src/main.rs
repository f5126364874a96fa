mod args;
mod commands;
mod text;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit statuses shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Invalid = 2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match commands::run(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            Status::Invalid
        }
    };
    ExitCode::from(status as u8)
}
