use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fracode_cli::{run, write_table, ConfigError, RunConfig, EXIT_INCOMPLETE, EXIT_PRECONDITION};

#[derive(Parser, Debug)]
#[command(
    name = "fracode",
    version,
    about = "Fractional calculus and fractional ODE experiments"
)]
struct Cli {
    /// JSON file with any of the flag fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    run: RunConfig,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("fracode: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            return fail(EXIT_PRECONDITION, line.trim_start_matches("error: "));
        }
    };
    let base = match &cli.config {
        Some(p) => match RunConfig::from_file(p) {
            Ok(c) => c,
            Err(e) => return fail(EXIT_PRECONDITION, e),
        },
        None => RunConfig::default(),
    };
    let cfg = base.merged(cli.run);
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => return fail(EXIT_PRECONDITION, e),
    };
    let format = cfg.format.unwrap_or_default();
    let written = match &cfg.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write_table(&outcome.table, format, &mut w)?;
            w.flush()
        }),
        None => {
            let mut w = io::stdout().lock();
            write_table(&outcome.table, format, &mut w).and_then(|_| w.flush())
        }
    };
    if let Err(e) = written.or_else(|e| {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Ok(())
        } else {
            Err(e)
        }
    }) {
        return fail(EXIT_PRECONDITION, ConfigError::new("out", e.to_string()));
    }
    match outcome.incomplete {
        Some(why) => fail(EXIT_INCOMPLETE, why),
        None => ExitCode::SUCCESS,
    }
}
