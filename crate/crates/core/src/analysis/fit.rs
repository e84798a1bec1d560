//! Least-squares polynomial fits and the fitting dissimilarity `d_E = 1 − r²`.

use nalgebra::{DMatrix, DVector};

use crate::error::{DepthError, Result};

/// Relative singular-value cutoff below which the design matrix is treated as rank deficient.
const RANK_TOLERANCE: f64 = 1e-10;

/// Outcome of fitting `u ≈ f(v)` with a polynomial `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub degree: usize,
    /// Monomial coefficients, highest degree first.
    pub coefficients: Vec<f64>,
    /// `δ_i = u_i − f(v_i)`.
    pub residuals: Vec<f64>,
    /// `ξ_i = u_i − mean(u)`.
    pub deviations: Vec<f64>,
    /// Coefficient of determination clamped to `[0, 1]`.
    pub r_squared: f64,
    /// `Σ(ξ_i² − δ_i²) / Σ ξ_i²` before clamping.
    pub r_squared_raw: f64,
    /// `1 − r_squared`.
    pub d_e: f64,
}

impl FitReport {
    pub fn clamped(&self) -> bool {
        self.r_squared != self.r_squared_raw
    }

    pub fn predict(&self, v: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, c| acc * v + c)
    }

    /// Linear-term coefficient of a degree-1 fit.
    pub fn slope(&self) -> f64 {
        self.coefficients[self.coefficients.len() - 2]
    }

    pub fn intercept(&self) -> f64 {
        self.coefficients[self.coefficients.len() - 1]
    }
}

fn check_inputs(u: &[f64], v: &[f64], degree: usize) -> Result<()> {
    if degree == 0 {
        return Err(DepthError::InvalidDegree);
    }
    if u.len() != v.len() {
        return Err(DepthError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.len() < degree + 2 {
        return Err(DepthError::TooFewPoints {
            required: degree + 2,
            found: u.len(),
        });
    }
    for x in u.iter().chain(v) {
        if !x.is_finite() {
            return Err(DepthError::NonFinite { index: 0, value: *x });
        }
    }
    Ok(())
}

/// Predictor centred on its mean and scaled to `[-1, 1]`.
struct Standardized {
    mean: f64,
    scale: f64,
}

impl Standardized {
    fn of(v: &[f64]) -> Option<Self> {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let scale = v.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
        (scale > 0.0).then_some(Self { mean, scale })
    }

    fn apply(&self, x: f64) -> f64 {
        (x - self.mean) / self.scale
    }
}

/// Least-squares coefficients in the standardized variable, lowest degree first.
fn solve(u: &[f64], t: &[f64], degree: usize) -> Result<Vec<f64>> {
    let design = DMatrix::from_fn(t.len(), degree + 1, |i, j| t[i].powi(j as i32));
    let target = DVector::from_column_slice(u);
    let svd = design.svd(true, true);
    let largest = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > largest * RANK_TOLERANCE)
        .count();
    if rank < degree + 1 {
        return Err(DepthError::RankDeficient { degree });
    }
    let coef = svd
        .solve(&target, largest * RANK_TOLERANCE)
        .map_err(|_| DepthError::RankDeficient { degree })?;
    Ok(coef.iter().copied().collect())
}

fn horner(coef_low_first: &[f64], t: f64) -> f64 {
    coef_low_first.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Converts `Σ c_k ((v − μ)/s)^k` into monomial coefficients of `v`, highest first.
fn to_monomial(centered: &[f64], std: &Standardized) -> Vec<f64> {
    let mut mono = vec![0.0; centered.len()];
    for (k, c) in centered.iter().enumerate() {
        let scaled = c / std.scale.powi(k as i32);
        for (j, slot) in mono.iter_mut().enumerate().take(k + 1) {
            *slot += scaled * binomial(k, j) * (-std.mean).powi((k - j) as i32);
        }
    }
    mono.reverse();
    mono
}

/// Ordinary least-squares fit of `u` on a degree-`degree` polynomial of `v`.
///
/// The predictor is mean-centred and scaled before solving; the report carries
/// monomial coefficients of the original variable. When `u` is constant there
/// is no variation to explain and `r² = 1`.
pub fn fit_polynomial(u: &[f64], v: &[f64], degree: usize) -> Result<FitReport> {
    check_inputs(u, v, degree)?;
    let std = Standardized::of(v).ok_or(DepthError::RankDeficient { degree })?;
    let t: Vec<f64> = v.iter().map(|x| std.apply(*x)).collect();
    let centered = solve(u, &t, degree)?;

    let mean_u = u.iter().sum::<f64>() / u.len() as f64;
    let residuals: Vec<f64> = u
        .iter()
        .zip(&t)
        .map(|(ui, ti)| ui - horner(&centered, *ti))
        .collect();
    let deviations: Vec<f64> = u.iter().map(|ui| ui - mean_u).collect();
    let ss_tot: f64 = deviations.iter().map(|x| x * x).sum();
    let r_squared_raw = if ss_tot > 0.0 {
        deviations
            .iter()
            .zip(&residuals)
            .map(|(xi, de)| xi * xi - de * de)
            .sum::<f64>()
            / ss_tot
    } else {
        1.0
    };
    let r_squared = r_squared_raw.clamp(0.0, 1.0);
    Ok(FitReport {
        degree,
        coefficients: to_monomial(&centered, &std),
        residuals,
        deviations,
        r_squared,
        r_squared_raw,
        d_e: 1.0 - r_squared,
    })
}

/// Fitting dissimilarity `d_E(u, v)` for a degree-`degree` polynomial fit.
pub fn d_e(u: &[f64], v: &[f64], degree: usize) -> Result<f64> {
    fit_polynomial(u, v, degree).map(|f| f.d_e)
}

/// Result of choosing the fit degree by k-fold cross validation.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSelection {
    pub degree: usize,
    /// Mean squared held-out error per candidate degree; `None` when a fold could not be fitted.
    pub scores: Vec<(usize, Option<f64>)>,
}

/// Picks the degree among `candidates` with the smallest mean squared
/// held-out error; fold `f` holds the indices `i` with `i % folds == f`.
pub fn select_degree(
    u: &[f64],
    v: &[f64],
    candidates: &[usize],
    folds: usize,
) -> Result<DegreeSelection> {
    if u.len() != v.len() {
        return Err(DepthError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let folds = folds.max(2);
    let mut scores = Vec::with_capacity(candidates.len());
    for &degree in candidates {
        let mut sse = 0.0;
        let mut ok = true;
        for fold in 0..folds {
            let (train_u, train_v): (Vec<f64>, Vec<f64>) = (0..u.len())
                .filter(|i| i % folds != fold)
                .map(|i| (u[i], v[i]))
                .unzip();
            match fit_polynomial(&train_u, &train_v, degree) {
                Ok(fit) => {
                    sse += (fold..u.len())
                        .step_by(folds)
                        .map(|i| (u[i] - fit.predict(v[i])).powi(2))
                        .sum::<f64>();
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        scores.push((degree, ok.then(|| sse / u.len() as f64)));
    }
    let degree = scores
        .iter()
        .filter_map(|(d, s)| s.map(|s| (*d, s)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(d, _)| d)
        .ok_or(DepthError::RankDeficient {
            degree: candidates.iter().copied().max().unwrap_or(1),
        })?;
    Ok(DegreeSelection { degree, scores })
}
