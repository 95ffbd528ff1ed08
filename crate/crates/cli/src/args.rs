use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopf_modes::verify::Suite;
use hopf_modes::HalfInt;

#[derive(Debug, Parser)]
#[command(
    name = "hopf-modes",
    version,
    about = "Scalar and one-form eigenmodes of the Laplace-de Rham operator on S^3"
)]
pub struct Cli {
    /// Evaluate batches on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mode index listings.
    Modes {
        #[command(subcommand)]
        action: ModesAction,
    },
    /// Evaluate a mode at a point.
    Eval(EvalArgs),
    /// Quadrature Gram matrix next to its closed form.
    Gram(GramArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Degeneracy table.
    Dims(DimsArgs),
}

#[derive(Debug, Subcommand)]
pub enum ModesAction {
    /// Scalar indices and the co-exact basis at one level.
    List {
        #[arg(long = "L")]
        l: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn half_int(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// A, B, Bp, C, Cp, E, Ep, F, scalar, xi or xip.
    #[arg(long)]
    pub family: String,
    #[arg(long = "L")]
    pub l: Option<u32>,
    /// m+ as an exact rational, e.g. 1/2.
    #[arg(long, value_parser = half_int, allow_hyphen_values = true)]
    pub mp: Option<HalfInt>,
    /// m- as an exact rational, e.g. -3/2.
    #[arg(long, value_parser = half_int, allow_hyphen_values = true)]
    pub mm: Option<HalfInt>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub phi: f64,
    /// Also emit the curl *d of the one-form.
    #[arg(long = "star-d")]
    pub star_d: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    /// A family tag (A, B, Bp, C, Cp, E, Ep, F) or `all` for {A, E, E'}.
    #[arg(long)]
    pub family: String,
    #[arg(long = "L")]
    pub l: u32,
    /// Level up to which the quadrature grid is exact; defaults to L.
    #[arg(long = "grid-lmax", alias = "Lmax-grid")]
    pub grid_lmax: Option<u32>,
    /// Divide every mode by its closed-form norm.
    #[arg(long)]
    pub normalized: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    pub suite: Suite,
    #[arg(long = "L-max", default_value_t = 4)]
    pub l_max: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random points per mode for analytic checks.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Random points per mode for finite-difference checks.
    #[arg(long = "fd-points", default_value_t = 20)]
    pub fd_points: usize,
    /// Lattice side for the vanishing-mode check.
    #[arg(long, default_value_t = 20)]
    pub lattice: usize,
    #[command(flatten)]
    pub output: Output,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long = "L-max", default_value_t = 10)]
    pub l_max: u32,
    #[command(flatten)]
    pub output: Output,
}
