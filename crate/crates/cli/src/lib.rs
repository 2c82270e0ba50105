//! Command-line front end: sampling, exact pushforwards, TV distances,
//! coupled runs and the verification suites.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage, input or
//! spec errors.

mod commands;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use output::{emit_series, parse_series, write_atomic};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "UNDIRECTIFY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "undirectify", version, about = "Directed and undirected random graph models and their couplings")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Master seed; overrides any seed in the inputs. Defaults to 0xDEADBEEF.
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// More progress output on stderr; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Only errors on stderr.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    pub quiet: bool,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Parse and validate the inputs, then exit.
    #[arg(long, global = true)]
    pub validate_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample graphs or digraphs from a model spec, one JSON object per line.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact law of a small model; directed models are pushed through the
    /// forgetful map.
    Phi {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Total variation distance between two distribution files.
    Tv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Run a coupled sampler and check its error bounds.
    Couple {
        #[arg(long, value_enum)]
        pair: Pair,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        replicates: usize,
        /// Largest number of per-replicate error counts kept in the report.
        #[arg(long, default_value_t = 1_000)]
        keep: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: undirectify::montecarlo::Suite,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pair {
    IagIegExact,
    IagIegApprox,
    AsrgEsrg,
}

/// Decimal or `0x`-prefixed hex.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("seed must be an unsigned 64-bit integer: {e}"))
}

fn parse_suite(s: &str) -> Result<undirectify::montecarlo::Suite, String> {
    s.parse().map_err(|e: undirectify::Error| e.to_string())
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV}={v:?} must be a positive integer"))?;
    // a pool may already exist when run() is called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
