//! Command-line front end for the `cspin-core` library.

pub mod cli;
pub mod commands;
pub mod error;
pub mod grid;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use cli::{Cli, Command};
use commands::Common;
use error::{CliError, CliResult};
use output::Format;

/// Runs a parsed invocation and writes its dataset.
pub fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be positive".into()));
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if !(cli.omega > 0.0 && cli.omega.is_finite()) {
        return Err(CliError::Validation(format!("omega must be positive, got {}", cli.omega)));
    }
    let common = Common {
        kind: cli.model.into(),
        omega: cli.omega,
    };
    let mut failure = None;
    let (dataset, summary_only) = match &cli.command {
        Command::Ground(a) => (commands::ground(&common, a)?, false),
        Command::Dynamics(a) => (commands::dynamics(&common, a)?, a.summary),
        Command::Qfi(a) => {
            let out = commands::qfi(&common, a)?;
            if let Some((n, msg)) = out.failed.first() {
                failure = Some(CliError::Numerical(format!("peak search failed for N = {n}: {msg}")));
            }
            (out.dataset, a.exponent)
        }
        Command::Swcheck(a) => (commands::swcheck(&common, a)?, false),
    };

    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if summary_only {
        let mut v = dataset.summary.clone().unwrap_or_default();
        v["metadata"] = dataset.metadata.clone();
        serde_json::to_writer_pretty(&mut sink, &v)?;
        writeln!(sink)?;
    } else {
        dataset.write(cli.format, &mut sink)?;
    }
    sink.flush()?;
    if let (Format::Csv, Some(s)) = (cli.format, &dataset.summary) {
        if !summary_only {
            eprintln!("{}", serde_json::to_string(s)?);
        }
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
