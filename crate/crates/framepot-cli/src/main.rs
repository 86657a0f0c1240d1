//! `framepot` — p-frame potential experiments from the command line.
//!
//! Subcommands: eval, construct, bounds, regimes, minimize, lemma-m, verify.
//! Every subcommand supports `--json`; deterministic commands are
//! bit-reproducible given the same parameters and seed. The environment
//! variable `FRAMEPOT_THREADS` caps worker parallelism.

mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Failure};

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("FRAMEPOT_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }

    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(err)) => {
            eprintln!("internal error: {err:#}");
            ExitCode::from(1)
        }
    }
}
