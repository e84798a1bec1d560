use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use skdepth::analysis::{convergence_table, d_c_depths, fit_polynomial, select_degree, tie_count};
use skdepth::{
    beta_skeleton_depth, depth_via_counts, halfspace_depth_2d, BoundingBox, DepthError, DepthKind,
    Point, PointSet, RangeCounter,
};

use crate::args::{ConvergeArgs, DcArgs, DepthArgs, FitArgs, Format, GenArgs, Kind, Method};
use crate::error::{CliError, Result};
use crate::io::{self, DepthRow};

/// The given seed, or one derived from the clock (reported on stderr).
pub fn resolve_seed(seed: Option<u64>, require: bool) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None if require => Err(CliError::Usage(
            "--seed is required when --require-seed is set".into(),
        )),
        None => {
            let nanos = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_nanos());
            let seed = (nanos as u64) ^ ((nanos >> 64) as u64);
            eprintln!("seed: {seed}");
            Ok(seed)
        }
    }
}

pub fn gen(args: &GenArgs, require_seed: bool) -> Result<()> {
    if args.n_data < 2 {
        return Err(CliError::Usage("--n-data must be at least 2".into()));
    }
    let [xmin, xmax, ymin, ymax] = args.bbox;
    let bbox = BoundingBox::new(xmin, xmax, ymin, ymax).map_err(|e| CliError::Usage(e.to_string()))?;
    let seed = resolve_seed(args.seed, require_seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = PointSet::uniform_2d_from(&mut rng, args.n_data, bbox);
    io::write_points(&mut *io::sink(args.out.as_deref())?, &data)?;
    if let (Some(n), Some(path)) = (args.n_query, args.queries_out.as_deref()) {
        let queries = PointSet::uniform_2d_from(&mut rng, n, bbox);
        io::write_points(&mut *io::sink(Some(path))?, &queries)?;
    }
    Ok(())
}

enum Evaluator {
    Halfspace,
    Direct(skdepth::Beta),
    Counted(skdepth::Beta, RangeCounter),
}

impl Evaluator {
    fn eval(&self, q: &Point, set: &PointSet) -> skdepth::Result<skdepth::DepthResult> {
        match self {
            Evaluator::Halfspace => halfspace_depth_2d(q, set),
            Evaluator::Direct(beta) => beta_skeleton_depth(q, set, *beta),
            Evaluator::Counted(beta, counter) => depth_via_counts(q, set, *beta, counter),
        }
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Exact => "exact",
        Method::Reduction => "reduction",
        Method::Approx => "approx",
    }
}

/// One result row per query, in input order.
pub fn depth_rows(args: &DepthArgs, require_seed: bool) -> Result<Vec<DepthRow>> {
    let evaluator = match (args.kind, args.method) {
        (Kind::Hd, Method::Exact) => Evaluator::Halfspace,
        (Kind::Hd, m) => {
            return Err(CliError::Usage(format!(
                "halfspace depth supports only --method exact, not {}",
                method_name(m)
            )))
        }
        (Kind::Skd, method) => {
            let beta = args
                .beta
                .ok_or_else(|| CliError::Usage("--kind skd requires --beta".into()))?;
            match method {
                Method::Exact => Evaluator::Direct(beta),
                Method::Reduction | Method::Approx => {
                    let set = io::read_points(&args.points)?;
                    let counter = if method == Method::Reduction {
                        RangeCounter::exact(&set)?
                    } else {
                        let seed = resolve_seed(args.seed, require_seed)?;
                        RangeCounter::sampled(&set, args.epsilon, args.delta, seed).map_err(
                            |e| match e {
                                DepthError::InvalidEpsilon(_) | DepthError::InvalidDelta(_) => {
                                    CliError::Usage(e.to_string())
                                }
                                other => other.into(),
                            },
                        )?
                    };
                    Evaluator::Counted(beta, counter)
                }
            }
        }
    };
    let set = io::read_points(&args.points)?;
    let queries = io::read_points(&args.queries)?;
    let method = method_name(args.method);
    queries
        .points()
        .par_iter()
        .map(|q| {
            let start = Instant::now();
            let r = evaluator.eval(q, &set)?;
            let wall_time_us = start.elapsed().as_micros() as u64;
            let kind = match r.kind {
                DepthKind::Halfspace => "hd".to_owned(),
                DepthKind::BetaSkeleton(b) => format!("skd:{b}"),
            };
            Ok(DepthRow {
                qx: q.coords()[0],
                qy: q.coords()[1],
                depth: r.value,
                raw_count: r.raw_count,
                normalizer: r.normalizer,
                kind,
                method: method.to_owned(),
                wall_time_us,
            })
        })
        .collect()
}

pub fn depth(args: &DepthArgs, require_seed: bool) -> Result<()> {
    let rows = depth_rows(args, require_seed)?;
    let mut out = io::sink(args.out.as_deref())?;
    match args.format {
        Format::Csv => io::write_rows_csv(&mut *out, &rows),
        Format::Json => io::write_json(&mut *out, &rows),
    }
}

#[derive(Debug, Serialize)]
pub struct ResidualPercentiles {
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
}

#[derive(Debug, Serialize)]
pub struct CvScore {
    pub degree: usize,
    pub mean_squared_error: Option<f64>,
}

/// JSON schema of `fit` output.
#[derive(Debug, Serialize)]
pub struct FitOutput {
    pub n: usize,
    pub degree: usize,
    /// Highest degree first.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
    pub r_squared_raw: f64,
    pub clamped: bool,
    pub d_e: f64,
    /// Of the absolute residuals.
    pub residual_percentiles: ResidualPercentiles,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_validation: Option<Vec<CvScore>>,
}

/// Nearest-rank percentile of sorted values.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = ((p / 100.0) * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

fn data_error(e: DepthError) -> CliError {
    CliError::Data(format!("cannot fit: {e}"))
}

#[derive(Debug, Serialize)]
struct ScatterRow {
    kind: &'static str,
    x: f64,
    y: f64,
}

pub fn fit(args: &FitArgs) -> Result<()> {
    let (u, v, _) = io::aligned_depths(&args.hd, &args.skd)?;
    let (degree, cross_validation) = match args.cv_folds {
        Some(folds) => {
            if folds < 2 || args.candidates.contains(&0) {
                return Err(CliError::Usage(
                    "--cv-folds must be at least 2 and --candidates positive".into(),
                ));
            }
            let sel = select_degree(&u, &v, &args.candidates, folds).map_err(data_error)?;
            let scores = sel
                .scores
                .iter()
                .map(|&(degree, mean_squared_error)| CvScore {
                    degree,
                    mean_squared_error,
                })
                .collect();
            (sel.degree, Some(scores))
        }
        None if args.degree == 0 => return Err(CliError::Usage("--degree must be positive".into())),
        None => (args.degree, None),
    };
    let report = fit_polynomial(&u, &v, degree).map_err(data_error)?;
    let mut abs: Vec<f64> = report.residuals.iter().map(|r| r.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let output = FitOutput {
        n: u.len(),
        degree,
        coefficients: report.coefficients.clone(),
        r_squared: report.r_squared,
        r_squared_raw: report.r_squared_raw,
        clamped: report.clamped(),
        d_e: report.d_e,
        residual_percentiles: ResidualPercentiles {
            p50: percentile(&abs, 50.0),
            p90: percentile(&abs, 90.0),
            p99: percentile(&abs, 99.0),
            max: abs.last().copied().unwrap_or(f64::NAN),
        },
        cross_validation,
    };
    if let Some(path) = args.scatter.as_deref() {
        let mut rows: Vec<ScatterRow> = v
            .iter()
            .zip(&u)
            .map(|(&x, &y)| ScatterRow { kind: "point", x, y })
            .collect();
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let steps = args.curve_samples.max(2);
        rows.extend((0..steps).map(|k| {
            let x = lo + (hi - lo) * k as f64 / (steps - 1) as f64;
            ScatterRow {
                kind: "curve",
                x,
                y: report.predict(x),
            }
        }));
        io::write_rows_csv(&mut *io::sink(Some(path))?, &rows)?;
    }
    io::write_json(&mut *io::sink(args.out.as_deref())?, &output)
}

#[derive(Debug, Serialize)]
pub struct DcOutput {
    pub d_c: f64,
    pub n: usize,
    pub ties_a: u64,
    pub ties_b: u64,
}

pub fn dc(args: &DcArgs) -> Result<()> {
    let (a, b, _) = io::aligned_depths(&args.a, &args.b)?;
    let d_c = d_c_depths(&a, &b).map_err(|e| CliError::Data(e.to_string()))?;
    let output = DcOutput {
        d_c,
        n: a.len(),
        ties_a: tie_count(&a),
        ties_b: tie_count(&b),
    };
    io::write_json(&mut *io::sink(args.out.as_deref())?, &output)
}

#[derive(Debug, Serialize)]
struct ConvergeRow {
    beta: String,
    mean_depth: f64,
    mean_ratio_dev: f64,
    undefined_ratios: usize,
    slope: Option<f64>,
    intercept: Option<f64>,
    d_e: Option<f64>,
}

pub fn converge(args: &ConvergeArgs) -> Result<()> {
    let set = io::read_points(&args.points)?;
    let queries = io::read_points(&args.queries)?;
    let rows: Vec<ConvergeRow> = convergence_table(&queries, &set, &args.betas)?
        .into_iter()
        .map(|row| ConvergeRow {
            beta: row.beta.to_string(),
            mean_depth: row.mean_depth,
            mean_ratio_dev: row.mean_ratio_deviation,
            undefined_ratios: row.undefined_ratios,
            slope: row.fit_vs_infinite.as_ref().map(|f| f.slope()),
            intercept: row.fit_vs_infinite.as_ref().map(|f| f.intercept()),
            d_e: row.fit_vs_infinite.as_ref().map(|f| f.d_e),
        })
        .collect();
    io::write_rows_csv(&mut *io::sink(args.out.as_deref())?, &rows)
}
