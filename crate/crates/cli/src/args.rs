//! Argument parsing and the validated run description.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fringelab_core::{Error as CoreError, TwoModeConfig, VectorLength};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "fringelab",
    version,
    about = "Multi-photon interference in a two-path interferometer: exact fringes, weak values, and semiclassical analysis",
    after_help = "Phases are radians in [-pi, pi]. Photon-number differences are passed doubled \
                  (--input-diff 4 means m_psi = 2) so half-integers stay exact."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact fringe probabilities with the classical envelope
    Fringes(TraceArgs),
    /// Weak values of the path intensity difference along a phase grid
    WeakValues(TraceArgs),
    /// Classical envelope function over a phase grid
    Envelope(CurveArgs),
    /// Classical path intensity difference, action, and envelope curves
    Semiclassical(CurveArgs),
    /// Random-phase classical interference histogram (seeded Monte Carlo)
    ClassicalMc(McArgs),
    /// Emit the reference figure datasets and the golden-number summary
    ReproducePaper(ReproduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Vector length sqrt(N(N+2))/2
    Exact,
    /// Vector length (N+1)/2
    Nplus1,
}

impl Convention {
    pub fn vector_length(self) -> VectorLength {
        match self {
            Convention::Exact => VectorLength::Exact,
            Convention::Nplus1 => VectorLength::NPlusOne,
        }
    }
}

#[derive(Args)]
pub struct TraceArgs {
    /// Total photon number N
    #[arg(long)]
    pub photons: u32,
    /// Doubled input photon-number difference 2*m_psi
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub input_diff: i32,
    /// Doubled output photon-number difference 2*m
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub output_diff: i32,
    /// Lower end of the phase window (radians)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi_min: f64,
    /// Upper end of the phase window (radians)
    #[arg(long, default_value_t = std::f64::consts::PI, allow_hyphen_values = true)]
    pub phi_max: f64,
    /// Number of grid points (cell midpoints of the open window)
    #[arg(long, default_value_t = 4096)]
    pub samples: u64,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub trace: TraceArgs,
    /// Which total J-vector length backs the classical formulas
    #[arg(long, value_enum, default_value_t = Convention::Exact)]
    pub convention: Convention,
}

#[derive(Args)]
pub struct McArgs {
    /// Total photon number N
    #[arg(long)]
    pub photons: u32,
    /// Doubled input photon-number difference 2*m_psi
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub input_diff: i32,
    /// Phase shift (radians)
    #[arg(long, allow_hyphen_values = true)]
    pub phi: f64,
    /// Number of Monte-Carlo samples
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// RNG seed; identical (seed, samples) runs are byte-identical
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Directory for the per-figure CSV files and summary.json
    #[arg(long)]
    pub out: PathBuf,
    /// Grid points per figure
    #[arg(long, default_value_t = 2048)]
    pub samples: u64,
}

pub enum CliError {
    /// Invalid arguments (exit code 2); the message names the violated
    /// invariant.
    Invalid(String),
    /// Numerical or I/O failure (exit code 3).
    Runtime(String),
    /// Downstream reader hung up mid-stream; exit quietly.
    BrokenPipe,
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidPhotonNumber(_)
            | CoreError::DiffOutOfRange { .. }
            | CoreError::ParityMismatch { .. }
            | CoreError::InvalidGrid
            | CoreError::NotNormalized { .. } => CliError::Invalid(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Runtime(format!("i/o failure: {e}"))
        }
    }
}

/// Phase-window and sample-count invariants shared by the trace commands.
pub fn validate_window(phi_min: f64, phi_max: f64, samples: u64) -> CliResult<()> {
    if samples < 16 {
        return Err(CliError::Invalid(format!(
            "samples must be at least 16, got {samples}"
        )));
    }
    let bound = std::f64::consts::PI * (1.0 + 1e-12);
    if !phi_min.is_finite()
        || !phi_max.is_finite()
        || phi_min.abs() > bound
        || phi_max.abs() > bound
    {
        return Err(CliError::Invalid(format!(
            "phase window [{phi_min}, {phi_max}] must lie within [-pi, pi]"
        )));
    }
    if phi_min >= phi_max {
        return Err(CliError::Invalid(format!(
            "phase window [{phi_min}, {phi_max}] must have phi_min < phi_max"
        )));
    }
    Ok(())
}

/// Builds the validated configuration, mapping violations to exit-code-2
/// errors that name the broken invariant.
pub fn build_config(photons: u32, input_diff: i32, output_diff: i32) -> CliResult<TwoModeConfig> {
    TwoModeConfig::from_doubled(photons, input_diff, output_diff).map_err(CliError::from)
}
