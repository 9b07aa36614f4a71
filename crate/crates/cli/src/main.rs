mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use lipwalk_core::harness::with_workers;
use lipwalk_core::Error;

use args::Cli;

/// Process exit statuses.
pub mod status {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const VIOLATION: u8 = 2;
    pub const UNDEFINED: u8 = 3;
    pub const NOT_APPLICABLE: u8 = 4;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() {
                status::INPUT
            } else {
                status::OK
            };
            return ExitCode::from(code);
        }
    };
    let workers = cli.workers.map(usize::from);
    let outcome = with_workers(workers, || commands::run(&cli)).and_then(|r| r);
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::UndefinedAverage { .. } => status::UNDEFINED,
                Error::TransformNotApplicable { .. } => status::NOT_APPLICABLE,
                _ => status::INPUT,
            };
            ExitCode::from(code)
        }
    }
}
