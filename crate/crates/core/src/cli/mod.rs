//! Command-line front end. Every subcommand writes its primary output to `out`, diagnostics to
//! `err`, and maps to exit code 0 (all checks pass), 1 (a verification failed) or 2 (bad usage or
//! configuration).

mod commands;
mod report;
pub mod specs;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use specs::Shape;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub(crate) fn domain(e: impl fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "radcomp", version, about = "Comparison geometry toolkit: solvers, certificates, constants and reports")]
pub struct Cli {
    /// Seed for every randomized suite.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for margins and round trips.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Number of sample nodes in tables and sampled checks.
    #[arg(long, global = true, default_value_t = 64)]
    pub grid: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug)]
pub struct Globals {
    pub seed: u64,
    pub tol: f64,
    pub grid: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a Jacobi or Riccati problem and dump the solution as CSV.
    Solve(SolveArgs),
    /// Transform a Jacobi solution, reverse it, and report the round-trip error.
    Dual(SystemArgs),
    /// Certify a comparison between two systems.
    Compare(CompareArgs),
    /// Tabulate the bounds implied by a curvature hypothesis; verify them on a model.
    Bounds(BoundsArgs),
    /// Classify power-log ball-mass profiles.
    Growth(GrowthArgs),
    /// Classify polynomial forms and check Condition W at sample points.
    Forms(FormsArgs),
    /// CKN constants and scenario verification.
    Ckn(CknArgs),
    /// Hardy constants and scenario verification.
    Hardy(HardyArgs),
    /// Constants of the seven weight specializations.
    Costa(CostaArgs),
    /// Monotonicity exponent λ with monotonicity and vanishing checks.
    Mono(MonoArgs),
    /// Run every scenario of a scenario file and print a summary.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Equation {
    Jacobi,
    Riccati,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Coefficient `G`, e.g. `const:1`, `power:2`, `invsq:-0.5+const:1`.
    #[arg(long, allow_hyphen_values = true)]
    pub coef: String,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 3.0)]
    pub tmax: f64,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value = "jacobi")]
    pub eq: Equation,
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// sturm, riccati, mixed-i or mixed-ii.
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub coef1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub coef2: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub kappa1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kappa2: f64,
    #[arg(long, default_value_t = 3.0)]
    pub tmax: f64,
    /// Write the certificate record and CSV here.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Run this many seeded random cases instead of a single pair.
    #[arg(long)]
    pub random: Option<usize>,
    /// With --random, draw pairs that violate the hypothesis; each must be rejected.
    #[arg(long)]
    pub violate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    Hessian,
    Laplacian,
    MeanCurvature,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub hyp: String,
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 5.0)]
    pub rmax: f64,
    #[arg(long, value_enum, default_value = "mean-curvature")]
    pub target: Target,
    /// Model to verify against: euclidean, hyperbolic, sphere, power:A, curvature:<coef>.
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[arg(long)]
    pub p: f64,
    /// Profiles `c,alpha,beta` for `B(r) = c r^alpha ln(e+r)^beta`.
    #[arg(allow_hyphen_values = true)]
    pub profiles: Vec<String>,
    /// Append this many seeded random profiles and check the implication chain.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FormsArgs {
    /// Forms such as `x1 dx1` or `x2^2 dx1^dx3 - 1/2 dx2^dx3`.
    #[arg(required = true, allow_hyphen_values = true)]
    pub forms: Vec<String>,
    /// Ambient dimension; defaults to the largest index used.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CknArgs {
    /// Condition name, e.g. flat, non-positive, equality-power.
    #[arg(long)]
    pub cond: Option<String>,
    #[command(flatten)]
    pub shape: Shape,
    /// Weight `a`.
    #[arg(long = "a", default_value_t = 0.0, allow_negative_numbers = true)]
    pub weight_a: f64,
    /// Weight `b`.
    #[arg(long = "b", default_value_t = 0.0, allow_negative_numbers = true)]
    pub weight_b: f64,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Print all twenty rows for the given shape parameters.
    #[arg(long)]
    pub all: bool,
    /// Verify a bump scenario on this model.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    pub r1: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r2: f64,
    #[arg(long, default_value_t = 3.0)]
    pub p: f64,
    #[arg(long, default_value_t = 3.0)]
    pub q: f64,
    /// Search bump shapes for the smallest ratio against the constant.
    #[arg(long)]
    pub sharpness: bool,
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Args, Debug)]
pub struct HardyArgs {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long = "A", default_value_t = 1.0)]
    pub big_a: f64,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 2.0)]
    pub cutoff: f64,
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CostaArgs {
    /// Case i..vii; all cases when omitted.
    #[arg(long)]
    pub case: Option<String>,
    /// Free weight of cases i-iii.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub free: f64,
    /// Condition name; all Ricci and radial rows when omitted.
    #[arg(long)]
    pub cond: Option<String>,
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct MonoArgs {
    /// Row i..vii.
    #[arg(long)]
    pub row: String,
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// identity, ppower:<p>, bi-plus, bi-minus.
    #[arg(long = "F", default_value = "identity")]
    pub f_kind: String,
    #[arg(long)]
    pub n: usize,
    /// Ball energy `c,alpha,beta` for `E = c ρ^alpha ln(e+ρ)^beta`.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<String>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub file: PathBuf,
    /// Also write each scenario's output and a summary CSV here.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let g = Globals { seed: cli.seed, tol: cli.tol, grid: cli.grid };
    if !(g.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", g.tol)));
    }
    if g.grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {}", g.grid)));
    }
    let outcome = match &cli.command {
        Command::Solve(a) => commands::solve(&g, a, out, err),
        Command::Dual(a) => commands::dual(&g, a, out),
        Command::Compare(a) => commands::compare(&g, a, out, err),
        Command::Bounds(a) => commands::bounds(&g, a, out, err),
        Command::Growth(a) => commands::growth(&g, a, out, err),
        Command::Forms(a) => commands::forms(&g, a, out),
        Command::Ckn(a) => commands::ckn(&g, a, out),
        Command::Hardy(a) => commands::hardy(&g, a, out),
        Command::Costa(a) => commands::costa(a, out),
        Command::Mono(a) => commands::mono(&g, a, out, err),
        Command::Report(a) => report::run_file(&g, a, out, err),
    }?;
    out.flush()?;
    Ok(outcome)
}
