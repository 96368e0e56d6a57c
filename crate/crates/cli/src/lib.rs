//! Command-line front end for `pcore`.
//!
//! Exit codes: 0 when every asserted check passes, 1 when a mathematical
//! check fails, 2 for usage and configuration errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcore::verify::CheckGroup;

mod commands;

pub use commands::{run_lambda, run_oracle, run_table, run_totient_check, run_verify};

#[derive(Debug, Parser)]
#[command(
    name = "pcore",
    version,
    about = "Largest p-core p'-partitions, computed exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build Λ_p and print its size, c and ratio.
    Lambda(LambdaArgs),
    /// Run checks over every prime in a range.
    Verify(VerifyArgs),
    /// Compare Λ_p against a brute-force oracle.
    Oracle(OracleArgs),
    /// Size and bound table over a prime range.
    Table(TableArgs),
    /// Check the totient partial-sum inequality up to n-max.
    TotientCheck(TotientArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Explicit parts (p ≤ 300).
    Parts,
    M,
    B,
    /// Residues visited by the walk (p ≤ 10000).
    Walk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Walks,
    LongestDp,
    Partitions,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[arg(short)]
    pub p: u64,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub emit: Vec<Emit>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long)]
    pub min: u64,
    #[arg(long)]
    pub max: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub range: RangeArgs,
    /// Comma-separated check groups; all groups when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_group)]
    pub checks: Vec<CheckGroup>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(short)]
    pub p: u64,
    #[arg(long, value_enum)]
    pub mode: OracleMode,
    /// Largest partition size searched in partitions mode. Defaults to the
    /// McSpirit–Ono bound, which no p-core p'-partition exceeds.
    #[arg(long)]
    pub size_cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TotientArgs {
    #[arg(long)]
    pub n_max: u64,
}

fn parse_group(s: &str) -> Result<CheckGroup, String> {
    s.parse().map_err(|e: pcore::Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] pcore::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use pcore::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 2,
            CliError::Core(E::NotOddPrime(_) | E::InvalidArgument(_) | E::CapExceeded { .. }) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Whether every asserted check passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Lambda(args) => run_lambda(args, stdout),
        Command::Verify(args) => {
            args.range.validate()?;
            let mut sink = open_output(&args.range, stdout)?;
            run_verify(args, &mut sink)
        }
        Command::Oracle(args) => run_oracle(args, stdout),
        Command::Table(args) => {
            args.range.validate()?;
            let mut sink = open_output(&args.range, stdout)?;
            run_table(args, &mut sink)
        }
        Command::TotientCheck(args) => run_totient_check(args, stdout),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to standard error.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match run(&cli, stdout) {
        Ok(outcome) => outcome.exit_code(),
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn open_output<'a>(
    range: &RangeArgs,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    match &range.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                CliError::Usage(format!("cannot open {} for writing: {e}", path.display()))
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(stdout)),
    }
}

impl RangeArgs {
    fn validate(&self) -> Result<(), CliError> {
        if self.min > self.max {
            return Err(CliError::Usage(format!(
                "empty range: min {} > max {}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    fn workers(&self) -> usize {
        self.workers
            .map_or_else(pcore::sweep::default_workers, |w| w as usize)
    }
}
