//! Command-line surface for `schreier-core`.
//!
//! Every command renders its output into a `String` first so that `--out`
//! can write it atomically and tests can compare bytes.

pub mod commands;
pub mod output;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use schreier_core::{Error as CoreError, FamilyParams, Oracle, DEFAULT_CEILING};

pub use output::{parse_bfile, render, Format, OutputRecord};

/// Exit code for usage and domain errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for the enumeration resource guard.
pub const EXIT_RESOURCE: i32 = 3;
/// Exit code for a verification that ran and found a failure.
pub const EXIT_FAILED: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Io(_) => EXIT_FAILED,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        if err.is_resource_guard() {
            CliError::Resource(err.to_string())
        } else {
            CliError::Usage(err.to_string())
        }
    }
}

/// Environment variable that overrides the enumeration ceiling.
pub const CEILING_ENV: &str = "SCHREIER_ORACLE_CEILING";

#[derive(Debug, Parser)]
#[command(
    name = "schreier",
    version,
    about = "Generalized Schreier-Fibonacci sequences"
)]
pub struct Cli {
    /// Largest n the brute-force enumerator will accept.
    #[arg(long, global = true, env = CEILING_ENV, default_value_t = DEFAULT_CEILING)]
    pub ceiling: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a single term |M_{p,n}| or |M_{p,q,n}|.
    Count(CountArgs),
    /// Print the terms for n = 1..=max-n.
    Table(TableArgs),
    /// Cross-check all methods, recurrences and bijections up to max-n.
    Verify(VerifyArgs),
    /// Detect the minimal linear recurrence of a sequence prefix.
    Detect(DetectArgs),
    /// Time each method per n and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub p: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub q: Option<u32>,
}

impl FamilyArgs {
    pub fn params(&self) -> Result<FamilyParams, CliError> {
        Ok(FamilyParams::new(self.p, self.q)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Brute-force enumeration.
    Enum,
    /// Explicit summation formula.
    Closed,
    /// Recurrence; coupled to the order-q sequence when q is given.
    Rec,
    /// Self-contained recurrence (depth 2q+2 when q is given).
    RecUncoupled,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Rec)]
    pub method: MethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: u32,
}

#[derive(Debug, Clone, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Number of terms past the leading zero band.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub prefix_len: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_order: u32,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: u32,
    /// Timed repetitions per cell; the fastest is reported.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub reps: u32,
}

/// What a successful run prints, and the exit code to leave with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            exit_code: 0,
        }
    }
}

/// Runs a parsed invocation.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let oracle = Oracle::with_ceiling(cli.ceiling);
    match &cli.command {
        Command::Count(args) => {
            let text = commands::count(&oracle, args)?;
            emit(text, args.output.out.as_deref())
        }
        Command::Table(args) => {
            let text = commands::table(&oracle, args)?;
            emit(text, args.output.out.as_deref())
        }
        Command::Verify(args) => {
            let (text, passed) = commands::verify(&oracle, args)?;
            Ok(Outcome {
                stdout: text,
                exit_code: if passed { 0 } else { EXIT_FAILED },
            })
        }
        Command::Detect(args) => commands::detect(args).map(Outcome::ok),
        Command::Bench(args) => commands::bench(&oracle, args).map(Outcome::ok),
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        None => Ok(Outcome::ok(text)),
        Some(path) => {
            write_atomically(path, text.as_bytes())?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

/// Writes through a temporary file in the destination directory, then renames.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
