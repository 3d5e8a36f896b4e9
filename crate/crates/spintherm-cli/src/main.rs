//! `spintherm` — command-line front end for the spintherm library.
//!
//! One subcommand per figure-class quantity: `battery` (equilibrium sweeps),
//! `convergence-check` (state-space truncation audit), `response` (waste and
//! entropic response curves), `entropy` (entropy/heat tables), and
//! `polarization` (temperature ↔ polarization maps). Every command emits CSV
//! or JSON, to stdout or `--out`, and accepts a flat `key = value` config
//! file that individual flags override.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 when the solver
//! cannot find an equilibrium.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Spacing;
use crate::output::Format;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config file, or scenario parameters → exit 2.
    Config(String),
    /// The computation itself has no solution → exit 3.
    Infeasible(String),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        CliError::Infeasible(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Infeasible(m) => f.write_str(m),
        }
    }
}

impl From<spintherm::Error> for CliError {
    fn from(e: spintherm::Error) -> Self {
        match e {
            spintherm::Error::Infeasible(_) => CliError::Infeasible(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

/// Spin-resource thermodynamics: battery sweeps, response curves, entropy
/// tables, and polarization maps as CSV or JSON.
#[derive(Parser)]
#[command(name = "spintherm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the entropy-battery equilibrium over a (d_s, τ_batt) sweep.
    Battery(BatteryArgs),
    /// Re-solve each battery cell with doubled state spaces and report the
    /// efficiency shift, to audit the truncation.
    ConvergenceCheck(BatteryArgs),
    /// Waste response C_s and entropic response C_s/τ over a τ grid.
    Response(ResponseArgs),
    /// Entropy and absorbed heat of a finite ensemble over a τ grid.
    Entropy(EntropyArgs),
    /// Spin temperature as a function of polarization.
    Polarization(PolarizationArgs),
}

#[derive(Args)]
pub struct OutputArgs {
    /// Flat key = value config file; explicit flags override its values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format (default csv).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BatteryArgs {
    /// Environment (hot bath) temperature τ_env.
    #[arg(long)]
    tau_env: Option<f64>,
    /// Initial battery temperature(s): a value or comma list, e.g. 0.3,0.367.
    #[arg(long)]
    tau_batt: Option<String>,
    /// Spin-bath sizes: a value, comma list, or inclusive range like 0..8.
    /// d_s = 0 disables the spin bath; d_s = 1 stores nothing and is
    /// rejected per cell. Default 0.
    #[arg(long)]
    ds: Option<String>,
    /// Start the spin bath at its own temperature instead of τ_batt.
    #[arg(long)]
    tau_spin: Option<f64>,
    /// Environment state-space truncation (default 400).
    #[arg(long)]
    d_env: Option<u32>,
    /// Battery energy-bath truncation (default 400).
    #[arg(long)]
    d_e: Option<u32>,
    /// Mode-count weight of the environment bath (default 1).
    #[arg(long)]
    weight_env: Option<f64>,
    /// Mode-count weight of the battery energy bath (default 1).
    #[arg(long)]
    weight_e: Option<f64>,
    /// Mode-count weight of the spin bath (default 1).
    #[arg(long)]
    weight_s: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
pub struct GridArgs {
    /// First τ of the grid (must be > 0).
    #[arg(long)]
    tau_start: Option<f64>,
    /// Last τ of the grid.
    #[arg(long)]
    tau_stop: Option<f64>,
    /// Number of grid points (≥ 2), endpoints included.
    #[arg(long)]
    tau_count: Option<u32>,
    /// Grid spacing (default linear).
    #[arg(long, value_enum)]
    spacing: Option<Spacing>,
}

#[derive(Args)]
pub struct ResponseArgs {
    /// Model: distinguishable, boson, einstein, or debye.
    #[arg(long)]
    model: Option<String>,
    /// State count d (distinguishable and boson models).
    #[arg(long)]
    d: Option<u32>,
    /// Continuum cutoff 2S (debye model).
    #[arg(long)]
    cutoff: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
pub struct EntropyArgs {
    /// Exchange statistics: distinguishable, boson, or fermion.
    #[arg(long)]
    statistics: Option<String>,
    /// Particle count N.
    #[arg(long)]
    n: Option<u32>,
    /// Single-particle state count d = 2S + 1.
    #[arg(long)]
    d: Option<u32>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
pub struct PolarizationArgs {
    /// Spin value(s) S: a half-integer or comma list, e.g. 0.5,1,200.
    #[arg(long)]
    spin: Option<String>,
    /// First polarization α of the grid (must be > 0).
    #[arg(long)]
    alpha_start: Option<f64>,
    /// Last polarization α of the grid (must be < 1).
    #[arg(long)]
    alpha_stop: Option<f64>,
    /// Number of grid points (≥ 2), endpoints included.
    #[arg(long)]
    alpha_count: Option<u32>,
    /// Grid spacing (default linear).
    #[arg(long, value_enum)]
    spacing: Option<Spacing>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Honor SPINTHERM_THREADS before any parallel work starts.
fn init_thread_pool() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SPINTHERM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| CliError::config(format!("SPINTHERM_THREADS must be a positive integer, got {raw:?}")))?;
    if threads == 0 {
        return Err(CliError::config("SPINTHERM_THREADS must be ≥ 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::config(format!("cannot size thread pool: {e}")))
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    init_thread_pool()?;
    match &cli.command {
        Command::Battery(args) => commands::battery(args),
        Command::ConvergenceCheck(args) => commands::convergence_check(args),
        Command::Response(args) => commands::response(args),
        Command::Entropy(args) => commands::entropy_table(args),
        Command::Polarization(args) => commands::polarization(args),
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
