use std::path::PathBuf;

use ab_ring::HalfOddInteger;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ab-ring",
    version,
    about = "Dirac spectrum, partial currents and persistent currents of an ideal Aharonov-Bohm ring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies E·R = sqrt(mu^2 + nu^2) of the requested modes
    Spectrum(ModeArgs),
    /// Partial currents chi(mu, nu) of the requested modes
    Current(ModeArgs),
    /// T = 0 persistent current of an even number of electrons
    Persistent(PersistentArgs),
    /// c(mu) over a log-spaced mu grid with lambda_F = k-ratio * mu
    Sweep(SweepArgs),
    /// Operator, orthonormality and derivative-identity self-checks
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("ring").required(true).args(["mu", "radius_nm"])))]
pub struct RingArgs {
    /// Dimensionless mass-radius product mu = MR
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Ring radius in nanometres (with --mass-ratio)
    #[arg(long, requires = "mass_ratio")]
    pub radius_nm: Option<f64>,
    /// Effective mass in units of the electron mass (with --radius-nm)
    #[arg(long, requires = "radius_nm", conflicts_with = "mu")]
    pub mass_ratio: Option<f64>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("modes").required(true).args(["lambda", "lambda_max"])))]
pub struct ModeSelection {
    /// Angular quantum number, e.g. 3/2, -1/2 or 2.5 (repeatable)
    #[arg(long, allow_hyphen_values = true, value_parser = parse_half_odd)]
    pub lambda: Vec<HalfOddInteger>,
    /// Use every mode -lambda_max, ..., +lambda_max
    #[arg(long, value_parser = parse_half_odd)]
    pub lambda_max: Option<HalfOddInteger>,
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Flux parameter beta
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub modes: ModeSelection,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("filling").required(true).args(["electrons", "lambda_max"])))]
pub struct PersistentArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Flux parameter beta
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-8)]
    pub beta: f64,
    /// Even electron count N_e
    #[arg(long)]
    pub electrons: Option<u64>,
    /// Highest occupied level lambda_F
    #[arg(long, value_parser = parse_half_odd)]
    pub lambda_max: Option<HalfOddInteger>,
    /// Refuse electron counts above this
    #[arg(long, default_value_t = ab_ring::persistent::DEFAULT_ELECTRON_CAP)]
    pub electron_cap: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// lambda_F / mu
    #[arg(long)]
    pub k_ratio: f64,
    #[arg(long, default_value_t = 100.0)]
    pub mu_min: f64,
    #[arg(long, default_value_t = 1e4)]
    pub mu_max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Keep the grid mu instead of moving it to lambda_F / k-ratio
    #[arg(long)]
    pub no_snap: bool,
    #[arg(long, default_value_t = ab_ring::persistent::DEFAULT_ELECTRON_CAP)]
    pub electron_cap: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub modes: ModeSelection,
    /// Quadrature nodes for scalar products and currents
    #[arg(long, default_value_t = ab_ring::dirac::DEFAULT_QUADRATURE_NODES)]
    pub nodes: usize,
    /// Largest residual accepted by every check
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_half_odd(s: &str) -> Result<HalfOddInteger, String> {
    s.parse::<HalfOddInteger>().map_err(|e| e.to_string())
}
