mod analyze;
mod bounds;
mod config;
mod output;
mod sample;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};

/// Exit status: 0 all checks pass, 1 a verification failed, 2 usage error.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => analyze::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Sample(args) => sample::run(args),
        Command::Bounds(args) => bounds::run(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
