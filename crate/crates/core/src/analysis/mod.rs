//! Comparing depth functions: fitting dissimilarity, poset dissimilarity, and
//! convergence of beta-skeleton depth as beta grows.

mod fit;
mod poset;

pub use fit::{d_e, fit_polynomial, select_degree, DegreeSelection, FitReport};
pub use poset::{d_c, d_c_depths, depth_poset, tie_count, ComparisonMatrix};

use crate::depth::{beta_skeleton_depths, DepthKind, DepthResult};
use crate::error::{DepthError, Result};
use crate::geometry::{Beta, Point, PointSet};

/// Depth values of a list of query points under one depth function.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthVector {
    values: Vec<f64>,
    labels: Vec<Point>,
    kind: Option<DepthKind>,
}

impl DepthVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(DepthError::NonFinite {
                index,
                value: values[index],
            });
        }
        Ok(Self {
            values,
            labels: Vec::new(),
            kind: None,
        })
    }

    /// Collects `results` computed for `labels`, in order.
    pub fn from_results(results: &[DepthResult], labels: Vec<Point>) -> Result<Self> {
        if !labels.is_empty() && labels.len() != results.len() {
            return Err(DepthError::LengthMismatch {
                left: results.len(),
                right: labels.len(),
            });
        }
        Ok(Self {
            values: results.iter().map(|r| r.value).collect(),
            labels,
            kind: results.first().map(|r| r.kind),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[Point] {
        &self.labels
    }

    pub fn kind(&self) -> Option<DepthKind> {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn poset(&self) -> ComparisonMatrix {
        depth_poset(&self.values)
    }
}

impl AsRef<[f64]> for DepthVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Summary of `SkD_beta` over a query set, compared with `SkD_{beta+1}` and `SkD_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub beta: Beta,
    pub mean_depth: f64,
    /// Mean of `|SkD_beta / SkD_{beta+1} − 1|` over queries where the ratio is defined.
    pub mean_ratio_deviation: f64,
    /// Queries with `SkD_{beta+1} = 0 < SkD_beta`; cannot occur for exact depths.
    pub undefined_ratios: usize,
    /// Linear fit of `SkD_∞` on `SkD_beta`; `None` when `SkD_beta` is constant
    /// or there are fewer than three queries.
    pub fit_vs_infinite: Option<FitReport>,
}

/// Ratio `num/den` with `0/0 = 1`; `None` when only the denominator vanishes.
pub fn depth_ratio(num: f64, den: f64) -> Option<f64> {
    match (num == 0.0, den == 0.0) {
        (true, true) => Some(1.0),
        (_, true) => None,
        _ => Some(num / den),
    }
}

/// One row per beta in `betas`, in order.
pub fn convergence_table(
    queries: &PointSet,
    set: &PointSet,
    betas: &[Beta],
) -> Result<Vec<ConvergenceRow>> {
    let at_infinity: Vec<f64> = values(beta_skeleton_depths(queries, set, Beta::Infinite)?);
    betas
        .iter()
        .map(|&beta| {
            let current = match beta {
                Beta::Infinite => at_infinity.clone(),
                _ => values(beta_skeleton_depths(queries, set, beta)?),
            };
            let next = match beta {
                Beta::Infinite => at_infinity.clone(),
                _ => values(beta_skeleton_depths(queries, set, beta.succ())?),
            };
            let ratios: Vec<Option<f64>> = current
                .iter()
                .zip(&next)
                .map(|(a, b)| depth_ratio(*a, *b))
                .collect();
            let defined: Vec<f64> = ratios.iter().flatten().map(|r| (r - 1.0).abs()).collect();
            let fit_vs_infinite = match fit_polynomial(&at_infinity, &current, 1) {
                Ok(fit) => Some(fit),
                Err(DepthError::RankDeficient { .. } | DepthError::TooFewPoints { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(ConvergenceRow {
                beta,
                mean_depth: mean(&current),
                mean_ratio_deviation: mean(&defined),
                undefined_ratios: ratios.len() - defined.len(),
                fit_vs_infinite,
            })
        })
        .collect()
}

fn values(results: Vec<DepthResult>) -> Vec<f64> {
    results.into_iter().map(|r| r.value).collect()
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Observational comparison of the two dissimilarities across several
/// experiments: does a small `d_c` go with a small `d_E`?
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissimilarityCorrelation {
    pub samples: usize,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
}

/// Correlates `(d_E, d_c)` pairs collected from several depth-function comparisons.
pub fn dissimilarity_correlation(pairs: &[(f64, f64)]) -> DissimilarityCorrelation {
    let (de, dc): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
    DissimilarityCorrelation {
        samples: pairs.len(),
        pearson: pearson(&de, &dc),
        spearman: pearson(&ranks(&de), &ranks(&dc)),
    }
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 {
        return None;
    }
    let (mx, my) = (mean(x), mean(y));
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    (vx > 0.0 && vy > 0.0).then(|| cov / (vx * vy).sqrt())
}

/// Average ranks (ties share the mean of their positions).
fn ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut out = vec![0.0; x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        let rank = (start + end - 1) as f64 / 2.0;
        for &i in &order[start..end] {
            out[i] = rank;
        }
        start = end;
    }
    out
}
