//! twistmat: batch experiment runner over the soluble matrix groups
//! S_n^I(R). Every subcommand writes deterministic JSON/CSV reports: the
//! same config and seed produce byte-identical files. Exit codes: 0 on
//! success, 1 on a mathematical failure or a size limit, 2 on usage errors.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use config::{Format, Opts};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "twistmat", version, about = "Exact experiments in soluble matrix groups: relations, automorphisms, twisted conjugacy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining generator relations on random samples
    VerifyRelations(Opts),
    /// Enumerate twisted conjugacy classes of an automorphism on a finite quotient
    Reidemeister(Opts),
    /// Certify a fixed family for an induced composite automorphism
    FixFamily(Opts),
    /// Bounded search for ring automorphisms of a localized polynomial ring
    RingAutSearch(Opts),
    /// Finite-generation verdicts for every index subset and ring
    FingenTable(Opts),
    /// Exhaustive fixed-point search over a coordinate box in the 3x3 group
    BoxSearch(Opts),
    /// Enumerate all automorphisms of a small finite quotient group
    AutEnum(Opts),
}

/// Failures are split so the process can exit with the documented codes.
pub enum CliError {
    /// Bad flags, malformed JSON, unknown names: exit 2.
    Usage(String),
    /// A mathematical failure or an enumeration limit: exit 1.
    Math(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
    fn math(e: impl std::fmt::Display) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<twistmat::Error> for CliError {
    fn from(e: twistmat::Error) -> Self {
        use twistmat::Error::*;
        match e {
            Parse(_) | InvalidSpec(_) | UnsupportedSpec(_) => CliError::Usage(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Math(format!("io error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifyRelations(opts) => commands::verify_relations(opts),
        Command::Reidemeister(opts) => commands::reidemeister(opts),
        Command::FixFamily(opts) => commands::fix_family(opts),
        Command::RingAutSearch(opts) => commands::ring_aut_search(opts),
        Command::FingenTable(opts) => commands::fingen_table(opts),
        Command::BoxSearch(opts) => commands::box_search(opts),
        Command::AutEnum(opts) => commands::aut_enum(opts),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub use config::resolve_format;
pub type FormatArg = Format;
