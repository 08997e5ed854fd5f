mod args;
mod commands;
mod output;
mod reproduce;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();

    // Optional cap on internal parallelism.
    if let Ok(raw) = std::env::var("FRINGELAB_THREADS") {
        match raw.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                // Ignore the error if a pool already exists (tests).
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => {
                eprintln!("error: FRINGELAB_THREADS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }

    match commands::run(cli) {
        Ok(()) | Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(CliError::Invalid(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
