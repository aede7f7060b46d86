//! Command-line interface: diagrams along filtering lines, exact bottleneck
//! distances, matching-distance estimation, analytic grids, candidate-set
//! sampling and SVG figures.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default output directory, taken from `PARETOMATCH_OUT` when a relative
/// output path is given.
pub const OUT_DIR_ENV: &str = "PARETOMATCH_OUT";

#[derive(Parser)]
#[command(
    name = "paretomatch",
    about = "Matching distance between 2-parameter sublevel-set filtrations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute persistence diagrams of a mesh along one filtering line.
    Diagram(DiagramArgs),
    /// Exact bottleneck distance and optimal matching between two diagram files.
    Bottleneck(BottleneckArgs),
    /// Estimate the matching distance between two meshes.
    Matchdist(MatchdistArgs),
    /// Emit analytic extended Pareto grids (and optionally meshes) for the
    /// generated surfaces.
    Pareto(ParetoArgs),
    /// Sample the special/ultraspecial/curve candidate sets of a grid pair.
    Special(SpecialArgs),
    /// Render grids, diagrams, candidate sets and report profiles to SVG.
    Render(RenderArgs),
    /// Run both estimators and check that the reduced candidate set attains
    /// the naive scan's value.
    Verify(MatchdistCommonArgs),
}

#[derive(Args)]
struct DiagramArgs {
    /// OFF mesh path.
    #[arg(long)]
    mesh: PathBuf,
    /// Sidecar value table; defaults to the mesh path with extension `vals`.
    #[arg(long)]
    values: Option<PathBuf>,
    /// Slope parameter of the filtering line, in [0, 1].
    #[arg(short, long)]
    a: f64,
    /// Offset parameter of the filtering line.
    #[arg(short, long)]
    b: f64,
    /// Restrict output to one homology degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Output diagram file.
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args)]
struct BottleneckArgs {
    diagram1: PathBuf,
    diagram2: PathBuf,
    /// Compare only this homology degree.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args)]
struct MatchdistCommonArgs {
    #[arg(long)]
    mesh1: PathBuf,
    #[arg(long)]
    values1: Option<PathBuf>,
    #[arg(long)]
    mesh2: PathBuf,
    #[arg(long)]
    values2: Option<PathBuf>,
    /// Grid of the first function (required by the reduced estimator).
    #[arg(long)]
    grid1: Option<PathBuf>,
    /// Grid of the second function (required by the reduced estimator).
    #[arg(long)]
    grid2: Option<PathBuf>,
    /// Samples along the slope axis.
    #[arg(long, default_value_t = 64)]
    res_a: usize,
    /// Samples along the offset axis.
    #[arg(long, default_value_t = 64)]
    res_b: usize,
    /// Comparison tolerance for verification.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Override the offset bound (must dominate both inputs' sup norms).
    #[arg(long)]
    cbar: Option<f64>,
    /// Restrict comparisons to one homology degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Write the estimate report(s) here.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Reduced,
    Verify,
}

#[derive(Args)]
struct MatchdistArgs {
    #[command(flatten)]
    common: MatchdistCommonArgs,
    #[arg(long, value_enum, default_value_t = Method::Naive)]
    method: Method,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Sphere,
    Torus,
}

#[derive(Args)]
struct ParetoArgs {
    #[arg(long, value_enum)]
    shape: Shape,
    #[arg(long, default_value_t = 32)]
    resolution: usize,
    /// Sphere radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Sphere center as `x,y,z`.
    #[arg(long, default_value = "0,0,0", value_parser = parse_triple)]
    center: (f64, f64, f64),
    /// Torus major,minor radii.
    #[arg(long, default_value = "1.0,0.4", value_parser = parse_pair)]
    radii: (f64, f64),
    /// Torus value-plane offset `u,v`.
    #[arg(long, default_value = "0,0", value_parser = parse_pair)]
    offset: (f64, f64),
    /// Torus value-plane scale `s1,s2`.
    #[arg(long, default_value = "1,1", value_parser = parse_pair)]
    scale: (f64, f64),
    /// Output grid file.
    #[arg(long)]
    out_grid: Option<PathBuf>,
    /// Output OFF mesh.
    #[arg(long, requires = "out_values")]
    out_mesh: Option<PathBuf>,
    /// Output value sidecar.
    #[arg(long, requires = "out_mesh")]
    out_values: Option<PathBuf>,
    /// Perturb mesh values uniformly in [-jitter, jitter] (for stability
    /// experiments).
    #[arg(long, default_value_t = 0.0)]
    jitter: f64,
    /// Seed for the jitter perturbation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SpecialArgs {
    #[arg(long)]
    grid1: PathBuf,
    #[arg(long)]
    grid2: PathBuf,
    /// Which candidate set to sample.
    #[arg(long, value_enum, default_value_t = SetChoice::U)]
    set: SetChoice,
    #[arg(long, default_value_t = 48)]
    res_a: usize,
    #[arg(long, default_value_t = 48)]
    res_b: usize,
    /// Residual tolerance for special-witness detection.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Offset bound; defaults to the largest finite coordinate of the grids.
    #[arg(long)]
    cbar: Option<f64>,
    /// Margin excluded around the boundary slopes.
    #[arg(long, default_value_t = 0.01)]
    margin: f64,
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetChoice {
    Special,
    Ultraspecial,
    Curvec,
    U,
}

#[derive(Args)]
struct RenderArgs {
    /// Grid files (drawn in the value plane).
    #[arg(long)]
    grid: Vec<PathBuf>,
    /// Diagram files; with exactly two, optimal matchings are drawn.
    #[arg(long)]
    diagram: Vec<PathBuf>,
    /// Candidate-set sample files (drawn over the parameter strip).
    #[arg(long)]
    candidates: Vec<PathBuf>,
    /// Estimate reports (profiles drawn side by side).
    #[arg(long)]
    report: Vec<PathBuf>,
    /// Filtering lines `a,b` to draw over the grids.
    #[arg(long, value_parser = parse_pair)]
    line: Vec<(f64, f64)>,
    #[arg(short, long)]
    out: PathBuf,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    }
    Ok((
        parts[0].trim().parse().map_err(|e| format!("{e}"))?,
        parts[1].trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn parse_triple(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    Ok((
        parts[0].trim().parse().map_err(|e| format!("{e}"))?,
        parts[1].trim().parse().map_err(|e| format!("{e}"))?,
        parts[2].trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Diagram(args) => commands::diagram(args),
        Command::Bottleneck(args) => commands::bottleneck(args),
        Command::Matchdist(args) => commands::matchdist(args),
        Command::Pareto(args) => commands::pareto(args),
        Command::Special(args) => commands::special(args),
        Command::Render(args) => commands::render(args),
        Command::Verify(args) => commands::matchdist(MatchdistArgs {
            common: args,
            method: Method::Verify,
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
