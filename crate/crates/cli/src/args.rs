use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rptkit_core::power_counting::{DEFAULT_COMBINE_POINTS, DEFAULT_MIXTURE_POINTS};

#[derive(Debug, Parser)]
#[command(name = "rptkit", version, about = "Exact generating-function, cumulant and diagram tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bell numbers B_0 through B_max.
    Bell(BellArgs),
    /// Cumulants of a moment table.
    Cumulants(CumulantsArgs),
    /// Moments of a cumulant table.
    Moments(InputArgs),
    /// Connectivity, irreducibility and degree data for a diagram.
    Diagram(DiagramArgs),
    /// Generating-function identity reports.
    Identities(IdentitiesArgs),
    /// Feynman-parameter quadrature checks.
    Feynman(FeynmanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    /// Largest n (at most 500).
    #[arg(long)]
    pub max: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON file, or `-` for standard input.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Partition,
    Both,
}

#[derive(Debug, Args)]
pub struct CumulantsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit the analysis report (the default when `--dot` is absent).
    #[arg(long)]
    pub analyze: bool,
    /// Emit Graphviz DOT instead of JSON.
    #[arg(long, conflicts_with = "analyze")]
    pub dot: bool,
    /// Sobolev index applied per loop momentum, as `p` or `p/q`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub sobolev_index: String,
    /// Lattice-spacing label copied into the report.
    #[arg(long)]
    pub lattice_spacing: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    BellEgf,
    #[value(name = "2var")]
    TwoVar,
    #[value(name = "2nvar")]
    TwoNVar,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Truncation order N (at most 32).
    #[arg(long)]
    pub order: u32,
    /// Number of second variations for `2nvar`.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// For `2nvar`: compare only from this order on and list every delta.
    #[arg(long)]
    pub from_order: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FeynmanArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present_any = ["sweep", "mixture"])]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present_any = ["sweep", "mixture"])]
    pub beta: Option<f64>,
    /// Gauss–Legendre nodes (per simplex coordinate with `--mixture`).
    #[arg(long)]
    pub points: Option<usize>,
    /// CSV grid over a log-spaced square `[0.1, 10]^2`.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "mixture"])]
    pub sweep: bool,
    /// Grid side for `--sweep`.
    #[arg(long, default_value_t = 20, requires = "sweep")]
    pub grid: usize,
    /// Comma-separated propagator weights for the n-fold mixture.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["alpha", "beta"])]
    pub mixture: Option<Vec<f64>>,
}

impl FeynmanArgs {
    pub fn combine_points(&self) -> usize {
        self.points.unwrap_or(DEFAULT_COMBINE_POINTS)
    }

    pub fn mixture_points(&self) -> usize {
        self.points.unwrap_or(DEFAULT_MIXTURE_POINTS)
    }
}
