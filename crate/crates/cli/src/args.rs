use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crw_core::ModelParams;

#[derive(Debug, Parser)]
#[command(
    name = "crw",
    version,
    about = "Spectrum and dynamics of the correlated random walk on a bounded interval"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues lambda_{n,j} for n <= n-max, cross-checked by shooting.
    Spectrum(SpectrumArgs),
    /// Critical speeds S_m below which nu_{m,j} are real.
    Critical(CriticalArgs),
    /// Time-domain run with decay-rate fit.
    Simulate(SimulateArgs),
    /// Sampled eigenfunction with its rotation summary.
    Eigenfunction(EigenfunctionArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpeedArgs {
    /// Nondimensional speed S = gamma / (mu L).
    #[arg(long = "S", value_name = "S", allow_negative_numbers = true, conflicts_with_all = ["gamma", "mu", "length"])]
    pub s: Option<f64>,
    /// Particle speed.
    #[arg(long, allow_negative_numbers = true, requires_all = ["mu", "length"])]
    pub gamma: Option<f64>,
    /// Turning rate.
    #[arg(long, allow_negative_numbers = true, requires_all = ["gamma", "length"])]
    pub mu: Option<f64>,
    /// Interval length.
    #[arg(long = "L", value_name = "L", allow_negative_numbers = true, id = "length", requires_all = ["gamma", "mu"])]
    pub length: Option<f64>,
}

impl SpeedArgs {
    pub fn params(&self) -> Result<ModelParams, String> {
        match (self.s, self.gamma, self.mu, self.length) {
            (Some(s), None, None, None) => ModelParams::new(s).map_err(|e| e.to_string()),
            (None, Some(g), Some(m), Some(l)) => ModelParams::from_dimensional(g, m, l).map_err(|e| e.to_string()),
            _ => Err("give either --S or all of --gamma --mu --L".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (standard output if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub speed: SpeedArgs,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Init {
    Eigen,
    Box,
    Hat,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub speed: SpeedArgs,
    /// Grid intervals.
    #[arg(long = "N", value_name = "N", default_value_t = crw_core::simulator::DEFAULT_INTERVALS)]
    pub intervals: usize,
    /// Final time (default: long enough for the default fit window).
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long, value_enum, default_value_t = Init::Box)]
    pub init: Init,
    /// Seed for `--init random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EigenfunctionArgs {
    #[command(flatten)]
    pub speed: SpeedArgs,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Root index within the index-n pair (ignored for n = 0).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub j: u8,
    /// Grid intervals.
    #[arg(long = "N", value_name = "N", default_value_t = 200)]
    pub intervals: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
