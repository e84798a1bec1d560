use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skdepth::Beta;

#[derive(Debug, Parser)]
#[command(name = "skdepth", version, about = "Halfspace and beta-skeleton depth experiments")]
pub struct Cli {
    /// Worker threads for per-query loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Refuse to run a randomized command without an explicit --seed.
    #[arg(long, global = true)]
    pub require_seed: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate uniform random points in a box.
    Gen(GenArgs),
    /// Evaluate a depth function at every query point.
    Depth(DepthArgs),
    /// Fit halfspace depth as a polynomial of another depth.
    Fit(FitArgs),
    /// Poset dissimilarity between two depth result files.
    Dc(DcArgs),
    /// Convergence of beta-skeleton depth as beta grows.
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n_data: usize,
    /// Number of query points written to --queries-out.
    #[arg(long, requires = "queries_out")]
    pub n_query: Option<usize>,
    /// `xmin,xmax,ymin,ymax`.
    #[arg(long, default_value = "-10,10,-10,10", value_parser = parse_bbox)]
    pub bbox: [f64; 4],
    #[arg(long)]
    pub seed: Option<u64>,
    /// Data points file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub queries_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hd,
    Skd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Reduction,
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// `1 ≤ beta`, or `inf`.
    #[arg(long, value_parser = parse_beta)]
    pub beta: Option<Beta>,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: Method,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Depth results used as the response (typically halfspace depth).
    #[arg(long)]
    pub hd: PathBuf,
    /// Depth results used as the predictor.
    #[arg(long)]
    pub skd: PathBuf,
    #[arg(long, default_value_t = 2, conflicts_with = "cv_folds")]
    pub degree: usize,
    /// Choose the degree among --candidates by k-fold cross validation.
    #[arg(long)]
    pub cv_folds: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub candidates: Vec<usize>,
    /// Scatter points and fitted-curve samples for external plotting.
    #[arg(long)]
    pub scatter: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    pub curve_samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DcArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub queries: PathBuf,
    /// Comma-separated, e.g. `1,2,10,1000,inf`.
    #[arg(long, value_delimiter = ',', value_parser = parse_beta, required = true)]
    pub betas: Vec<Beta>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_beta(s: &str) -> Result<Beta, String> {
    s.parse::<Beta>().map_err(|e| e.to_string())
}

fn parse_bbox(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let bbox: [f64; 4] = parts
        .try_into()
        .map_err(|_| "expected xmin,xmax,ymin,ymax".to_string())?;
    skdepth::BoundingBox::new(bbox[0], bbox[1], bbox[2], bbox[3]).map_err(|e| e.to_string())?;
    Ok(bbox)
}
