use std::process::ExitCode;

use clap::Parser;
use paramvqe_cli::{execute, Cli, EXIT_FATAL, EXIT_OK};

fn main() -> ExitCode {
    // clap's own usage-error code (2) would read as a partial failure.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FATAL } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FATAL as u8)
        }
    }
}
