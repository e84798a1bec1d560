//! Exact and sampled range counters over a planar point set.
//!
//! A sampled counter keeps a uniform sample without replacement of size
//!
//! ```text
//! m = ceil(C · (ν·ln(1/ε) + ln(1/δ)) / ε²)
//! ```
//!
//! and answers a range with `(n/m)·|sample ∩ range|`. With probability at least
//! `1 − δ` such a sample is an ε-approximation for the whole range family, so
//! every estimate is within `ε·n` of the true count. `ν` is the VC-dimension
//! bound [`RANGE_VC_DIMENSION`] for halfplanes, disks, and their pairwise
//! intersections; `C` is [`SAMPLE_SIZE_CONSTANT`]. When `m ≥ n` the counter
//! stores the full set and answers exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::depth::DepthResult;
use crate::error::{DepthError, Result};
use crate::geometry::{Beta, Point, PointSet};
use crate::reduction::{depth_via_counts, Range};

/// VC-dimension bound `ν` used for disk ∧ halfplane ranges (two families of
/// dimension 3 each).
pub const RANGE_VC_DIMENSION: f64 = 6.0;

/// Leading constant `C` of the sample-size bound.
pub const SAMPLE_SIZE_CONSTANT: f64 = 0.5;

/// Sample size for an `(ε, δ)` guarantee.
pub fn sample_size(epsilon: f64, delta: f64) -> Result<usize> {
    check_params(epsilon, delta)?;
    let m = SAMPLE_SIZE_CONSTANT
        * (RANGE_VC_DIMENSION * (1.0 / epsilon).ln() + (1.0 / delta).ln())
        / (epsilon * epsilon);
    Ok(m.ceil() as usize)
}

fn check_params(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(DepthError::InvalidEpsilon(epsilon));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(DepthError::InvalidDelta(delta));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterMode {
    Exact,
    Sampled,
}

/// How to build a [`RangeCounter`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CounterConfig {
    Exact,
    Sampled { epsilon: f64, delta: f64, seed: u64 },
}

/// Answers counting queries for [`Range`]s over a fixed planar set.
#[derive(Debug, Clone)]
pub struct RangeCounter {
    mode: CounterMode,
    base_size: usize,
    points: Vec<[f64; 2]>,
    epsilon: Option<f64>,
    delta: Option<f64>,
    seed: Option<u64>,
    requested_sample: Option<usize>,
}

impl RangeCounter {
    pub fn build(set: &PointSet, config: CounterConfig) -> Result<Self> {
        match config {
            CounterConfig::Exact => Self::exact(set),
            CounterConfig::Sampled {
                epsilon,
                delta,
                seed,
            } => Self::sampled(set, epsilon, delta, seed),
        }
    }

    pub fn exact(set: &PointSet) -> Result<Self> {
        let points = set.planar_points()?;
        Ok(Self {
            mode: CounterMode::Exact,
            base_size: points.len(),
            points,
            epsilon: None,
            delta: None,
            seed: None,
            requested_sample: None,
        })
    }

    /// Sampled counter with the `(ε, δ)` sample size; exact when that size reaches `n`.
    pub fn sampled(set: &PointSet, epsilon: f64, delta: f64, seed: u64) -> Result<Self> {
        let m = sample_size(epsilon, delta)?;
        let mut counter = Self::with_sample_size(set, m, seed)?;
        counter.epsilon = Some(epsilon);
        counter.delta = Some(delta);
        Ok(counter)
    }

    /// Sampled counter with an explicit sample size `m`; exact when `m ≥ n`.
    pub fn with_sample_size(set: &PointSet, m: usize, seed: u64) -> Result<Self> {
        let all = set.planar_points()?;
        let n = all.len();
        let mut counter = Self::exact(set)?;
        counter.seed = Some(seed);
        counter.requested_sample = Some(m);
        if m < n {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            counter.points = rand::seq::index::sample(&mut rng, n, m.max(1))
                .into_iter()
                .map(|i| all[i])
                .collect();
            counter.mode = CounterMode::Sampled;
        }
        Ok(counter)
    }

    pub fn mode(&self) -> CounterMode {
        self.mode
    }

    pub fn is_exact(&self) -> bool {
        self.mode == CounterMode::Exact
    }

    /// `true` when sampling was requested but the sample would not be smaller than the set.
    pub fn fell_back_to_exact(&self) -> bool {
        self.requested_sample.is_some() && self.is_exact()
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    /// Number of stored points (`n` in exact mode).
    pub fn sample_size(&self) -> usize {
        self.points.len()
    }

    /// Sample size asked for by the caller or the `(ε, δ)` bound.
    pub fn requested_sample_size(&self) -> Option<usize> {
        self.requested_sample
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Multiplier `n/m` applied to sample counts.
    pub fn scale(&self) -> f64 {
        self.base_size as f64 / self.points.len().max(1) as f64
    }

    pub fn count(&self, range: &Range) -> f64 {
        self.count_translated(range, [0.0, 0.0])
    }

    /// Counts the points `x` with `x − origin` in `range`; ranges expressed in
    /// query-centred coordinates are answered without rebuilding.
    pub fn count_translated(&self, range: &Range, origin: [f64; 2]) -> f64 {
        let hits = self
            .points
            .iter()
            .filter(|p| range.contains([p[0] - origin[0], p[1] - origin[1]]))
            .count();
        match self.mode {
            CounterMode::Exact => hits as f64,
            CounterMode::Sampled => hits as f64 * self.scale(),
        }
    }
}

/// Beta-skeleton depth from a sampled counter. Within about `2ε` of the exact
/// depth with probability at least `1 − δ`, and deterministic for a fixed seed.
pub fn approx_beta_skeleton_depth(
    q: &Point,
    set: &PointSet,
    beta: Beta,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<DepthResult> {
    let counter = RangeCounter::sampled(set, epsilon, delta, seed)?;
    depth_via_counts(q, set, beta, &counter)
}
