//! `rngfx`: generators, samplers and forensic audits from the command line.
//!
//! Reports go to stdout (or `--output`), progress to stderr.
//! Exit codes: 0 success, 1 runtime failure, 2 invalid configuration,
//! 3 census counter saturation.

mod args;
mod audit;
mod census;
mod error;
mod experiment;
mod gen;
mod seedcheck;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use rngfx::report::Report;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rngfx",
    version,
    about = "Uniform generators, Ziggurat sampling and their forensics"
)]
struct Cli {
    /// Worker threads for parallel censuses (default: available parallelism).
    #[arg(long, global = true, env = "RNGFX_WORKERS")]
    workers: Option<usize>,

    /// Suppress progress output on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit uniform words or normal deviates.
    Gen(gen::GenArgs),
    /// Preimage census of a 32-bit map.
    Census(census::CensusArgs),
    /// Run one of the forensic audits.
    Audit(audit::AuditArgs),
    /// Streaming χ² test of Ziggurat deviates on evenly spaced bins.
    Experiment(experiment::ExperimentArgs),
    /// Related-seed correlation checks.
    Seedcheck(seedcheck::SeedcheckArgs),
    /// Dump a Ziggurat table as CSV.
    Table(TableArgs),
}

#[derive(Debug, clap::Args)]
struct TableArgs {
    /// Number of strips (64 or 128).
    #[arg(long, default_value_t = 128)]
    k: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Shared run context.
pub struct Ctx {
    pub workers: Option<usize>,
    pub quiet: bool,
}

impl Ctx {
    pub fn progress(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

/// Write `text` to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Failed(format!("writing {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Failed(format!("writing stdout: {e}")))
        }
    }
}

pub fn emit_report<T: Serialize>(
    path: Option<&Path>,
    kind: &str,
    config: impl Serialize,
    body: T,
) -> Result<(), CliError> {
    let mut text = Report::new(kind, config, body).to_json();
    text.push('\n');
    emit(path, &text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx {
        workers: cli.workers,
        quiet: cli.quiet,
    };
    if ctx.workers == Some(0) {
        return Err(CliError::Config("--workers must be positive".into()));
    }
    match cli.command {
        Command::Gen(a) => gen::run(&ctx, a),
        Command::Census(a) => census::run(&ctx, a),
        Command::Audit(a) => audit::run(&ctx, a),
        Command::Experiment(a) => experiment::run(&ctx, a),
        Command::Seedcheck(a) => seedcheck::run(&ctx, a),
        Command::Table(a) => {
            let t = rngfx::ziggurat::ZigguratTable::build(a.k)?;
            emit(a.output.as_deref(), &t.to_csv())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
