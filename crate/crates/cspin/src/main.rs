use std::process::ExitCode;

use clap::Parser;
use cspin::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cspin::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
