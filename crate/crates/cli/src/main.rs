mod commands;
mod plot;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use overtwist::lifting::LiftError;
use overtwist::oracle::OracleError;
use overtwist::rotation::RotationError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "overtwist", version, about = "Over-rotation intervals and over-twist patterns, in exact arithmetic")]
pub struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Also print decimal approximations of the main numbers.
    #[arg(long, global = true)]
    pub approx: bool,
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_denominator: u64,
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iterations: u64,
    /// Longest loop followed by `oracle`.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..))]
    pub max_period: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Over-rotation interval of a map given as a JSON spec (`-` for stdin).
    Rotnum { map: String },
    /// Bimodal over-twist patterns with over-rotation number p/q.
    Overtwists { p: usize, q: usize },
    /// Decide whether a pattern is over-twist.
    Verify { pattern: String },
    /// Covering graph, minimum mean cycle and small cycles of a pattern.
    Oracle { pattern: String },
    /// Graphs of the map, its lift and the lower bound map.
    Plot {
        map: String,
        /// Write plot.svg and the CSV dumps here instead of printing.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Over-rotation pair of a pattern.
    Orp { pattern: String },
    /// Compare two positions of the Sharkovsky order.
    Sharkovsky { m: String, n: String },
    /// The set Ovr(eta) up to a period bound.
    Ovrset {
        /// `0`, `half`, `ALPHA:KEY` such as `1/3:2^inf`, or `irrational:LO:HI`.
        eta: String,
        #[arg(long, default_value_t = 12)]
        bound: u64,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let resource = err.chain().any(|e| {
        matches!(e.downcast_ref::<LiftError>(), Some(LiftError::ResourceLimit { .. }))
            || matches!(
                e.downcast_ref::<RotationError>(),
                Some(RotationError::Lift(LiftError::ResourceLimit { .. }))
            )
            || matches!(e.downcast_ref::<OracleError>(), Some(OracleError::MaxPeriod { .. }))
    });
    if resource {
        3
    } else {
        2
    }
}

fn run(cli: &Cli) -> Result<String> {
    commands::dispatch(cli)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
