use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linarr::{parse_variant, CliError, RunOptions};

#[derive(Parser)]
#[command(name = "linarr", version, about = "Invariants of plane line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the JSON invariant report of an arrangement file.
    Analyze {
        path: PathBuf,
        /// Degree window for the Milnor algebra.
        #[arg(long)]
        cap: Option<usize>,
        /// Confirm every modular rank exactly.
        #[arg(long)]
        certified: bool,
        /// Incidence system used for the stratum: E or Eprime.
        #[arg(long, default_value = "E")]
        variant: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an arrangement file realizing a named lattice, e.g. "L(6,4)".
    Realize {
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the lattices and invariants of two arrangement files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        certified: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the shipped lattice list for d in {4, 5, 6}.
    Census {
        d: usize,
        /// Use modular ranks for every row.
        #[arg(long)]
        modular: bool,
        /// Emit JSON instead of a text table.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Params(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { path, cap, certified, variant, out } => {
            let opts = RunOptions { cap, certified, variant: parse_variant(&variant)? };
            emit(&linarr::cmd_analyze(&path, &opts)?, out.as_deref())
        }
        Command::Realize { family, out } => emit(&linarr::cmd_realize(&family)?, out.as_deref()),
        Command::Compare { a, b, cap, certified, out } => {
            let opts = RunOptions { cap, certified, ..RunOptions::default() };
            emit(&linarr::cmd_compare(&a, &b, &opts)?, out.as_deref())
        }
        Command::Census { d, modular, json, out } => match linarr::cmd_census(d, modular, json) {
            Ok(text) => emit(&text, out.as_deref()),
            Err(CliError::CensusFail(text)) => {
                emit(&text, out.as_deref())?;
                Err(CliError::CensusFail(format!("census d={d} has failing cells")))
            }
            Err(e) => Err(e),
        },
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("linarr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
