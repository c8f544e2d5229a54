//! `degwhit`: degenerate Whittaker coefficients of spherical Eisenstein
//! series, nilpotent orbit data and Whittaker-pair checks from the command
//! line.
//!
//! Exit codes: 0 success, 1 other failure (including failed report rows),
//! 2 pole at the requested point, 3 infeasible enumeration strategy,
//! 4 invalid input.

mod cache;
mod coeff;
mod config;
mod exit;
mod orbit;
mod table;

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::exit::{classify, Exit};

#[derive(Parser, Debug)]
#[command(
    name = "degwhit",
    version,
    about = "Degenerate Whittaker coefficients of Eisenstein series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbolic coefficient and Eulerianity verdicts for one character.
    Coeff(CoeffArgs),
    /// Reproduce the realization and Gelfand–Kirillov dimension tables.
    Table(TableArgs),
    /// Nilpotent orbit information.
    Orbit(OrbitArgs),
    /// Whittaker-pair analysis.
    Pair(PairArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Blocks {
    Rising,
    Falling,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    #[value(alias = "levi-pruned")]
    Pruned,
    Exhaustive,
}

#[derive(Args, Debug, Default)]
pub struct CoeffArgs {
    /// Group label, e.g. A3, D5, E8.
    #[arg(long)]
    pub group: Option<String>,
    /// Node i of the maximal parabolic; λ = 2sΛ_i − ρ.
    #[arg(long)]
    pub node: Option<usize>,
    /// Character support: `6:m,8:n` (named charges), `1:3,4:-2` (integers) or `6,8`.
    #[arg(long)]
    pub support: Option<String>,
    /// Evaluation point as `p/q`, or `generic`.
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Chamber in which block parameters are written.
    #[arg(long, value_enum)]
    pub blocks: Option<Blocks>,
    /// Merge terms sharing a denominator and block factors.
    #[arg(long)]
    pub grouped: bool,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Raise the exhaustive-enumeration cap far enough for E7.
    #[arg(long)]
    pub slow: bool,
    /// Coset-table cache directory (also DEGWHIT_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// TOML file with the same keys as these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Realizations,
    Gkdims,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub which: TableKind,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    pub group: String,
    /// Jordan type, e.g. `31111111` or `3,1,1`.
    #[arg(long, conflicts_with_all = ["label", "list"])]
    pub partition: Option<String>,
    /// Bala–Carter or partition label, e.g. `A1`, `(2A1)'`.
    #[arg(long, conflicts_with = "list")]
    pub label: Option<String>,
    #[arg(long)]
    pub list: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub group: String,
    /// Neutral pair from orthogonal roots: `ROOT:CHARGE`, repeated or `;`-separated.
    /// ROOT is a simple-root node or a coordinate list such as `[1,1,0]`.
    #[arg(long, conflicts_with_all = ["s", "phi"])]
    pub neutral: Vec<String>,
    /// Values α_i(S), comma-separated rationals.
    #[arg(long, requires = "phi")]
    pub s: Option<String>,
    /// Terms of f_φ as `ROOT:CHARGE`; roots must have S-degree −2.
    #[arg(long)]
    pub phi: Vec<String>,
    /// Values α_i(S') of a second pair with the same φ; reports whether the
    /// first pair dominates it.
    #[arg(long)]
    pub dominates: Vec<String>,
    /// Orbit label for the isotropic-dimension check.
    #[arg(long)]
    pub orbit: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

/// Writes command output to stdout; a closed pipe ends output silently.
pub fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Coeff(a) => coeff::run(&a),
        Command::Table(a) => table::run(&a),
        Command::Orbit(a) => orbit::run_orbit(&a),
        Command::Pair(a) => orbit::run_pair(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Exit::Validation as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err) as u8)
        }
    }
}
