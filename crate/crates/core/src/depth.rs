//! Exact depth computations: planar halfspace (Tukey) depth by angular sweep
//! and beta-skeleton depth by pair enumeration in any dimension.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use robust::{orient2d, Coord};

use crate::error::{DepthError, Result};
use crate::geometry::{pair_contains, Beta, Point, PointSet};

/// Which depth function produced a [`DepthResult`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthKind {
    Halfspace,
    BetaSkeleton(Beta),
}

impl fmt::Display for DepthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthKind::Halfspace => f.write_str("hd"),
            DepthKind::BetaSkeleton(b) => write!(f, "skd:{b}"),
        }
    }
}

/// A normalized depth value together with the integer count it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthResult {
    /// Normalized depth in `[0, 1]`.
    pub value: f64,
    /// Minimum halfplane count, or number of influence regions containing the query.
    pub raw_count: u64,
    /// `n` for halfspace depth, number of non-degenerate pairs for beta-skeleton depth.
    pub normalizer: u64,
    pub kind: DepthKind,
}

impl DepthResult {
    pub(crate) fn halfspace(raw_count: u64, n: u64) -> Self {
        // 2/n normalization; only n <= 2 inputs can push it above one.
        let value = (2.0 * raw_count as f64 / n as f64).min(1.0);
        Self {
            value,
            raw_count,
            normalizer: n,
            kind: DepthKind::Halfspace,
        }
    }

    pub(crate) fn beta_skeleton(raw_count: u64, normalizer: u64, beta: Beta) -> Self {
        Self {
            value: raw_count as f64 / normalizer as f64,
            raw_count,
            normalizer,
            kind: DepthKind::BetaSkeleton(beta),
        }
    }
}

/// Planar halfspace depth `(2/n)·min |S ∩ H|` over closed halfplanes `H` whose
/// boundary passes through `q`, clamped to one.
///
/// Runs in `O(n log n)`: data points are sorted by angle around `q` using exact
/// orientation predicates, equal directions are grouped, and a two-pointer
/// sweep evaluates every open arc of boundary orientations.
pub fn halfspace_depth_2d(q: &Point, set: &PointSet) -> Result<DepthResult> {
    if set.is_empty() {
        return Err(DepthError::TooFewPoints {
            required: 1,
            found: 0,
        });
    }
    let q = q.planar()?;
    let points = set.planar_points()?;
    let raw = min_halfplane_count(q, &points);
    Ok(DepthResult::halfspace(raw as u64, points.len() as u64))
}

/// Halfspace depth of every row of `queries`, in order.
pub fn halfspace_depths_2d(queries: &PointSet, set: &PointSet) -> Result<Vec<DepthResult>> {
    queries
        .points()
        .par_iter()
        .map(|q| halfspace_depth_2d(q, set))
        .collect()
}

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// Exact sign of the turn `q → a → b`: positive for counter-clockwise.
pub(crate) fn orientation(q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    orient2d(coord(q), coord(a), coord(b))
}

/// `true` when `p` lies in the half-open upper half-turn `[0, π)` around `q`.
pub(crate) fn upper_half(q: [f64; 2], p: [f64; 2]) -> bool {
    p[1] > q[1] || (p[1] == q[1] && p[0] > q[0])
}

fn angular_cmp(q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> Ordering {
    match (upper_half(q, a), upper_half(q, b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => 0.0.partial_cmp(&orientation(q, a, b)).unwrap_or(Ordering::Equal),
    }
}

/// Minimum number of points of `points` in a closed halfplane bounded by a line through `q`.
pub(crate) fn min_halfplane_count(q: [f64; 2], points: &[[f64; 2]]) -> usize {
    let mut around: Vec<[f64; 2]> = points.iter().copied().filter(|p| *p != q).collect();
    let coincident = points.len() - around.len();
    if around.is_empty() {
        return coincident;
    }
    around.sort_by(|a, b| angular_cmp(q, *a, *b));

    // Directions with their multiplicities.
    let mut dirs: Vec<[f64; 2]> = Vec::new();
    let mut weights: Vec<usize> = Vec::new();
    for p in around.iter().copied() {
        match dirs.last() {
            Some(&d) if angular_cmp(q, d, p) == Ordering::Equal => {
                *weights.last_mut().expect("weights track dirs") += 1;
            }
            _ => {
                dirs.push(p);
                weights.push(1);
            }
        }
    }

    let m = around.len();
    let groups = dirs.len();
    // `window` holds the weight of groups strictly after `g` and at most a
    // half-turn ahead, i.e. the points with angle in (φ_g, φ_g + π].
    let mut best = m;
    let mut end = 1;
    let mut window = 0;
    for g in 0..groups {
        if end <= g {
            end = g + 1;
            window = 0;
        }
        while end < g + groups && orientation(q, dirs[g], dirs[end % groups]) >= 0.0 {
            window += weights[end % groups];
            end += 1;
        }
        best = best.min(window).min(m - window);
        if end > g + 1 {
            window -= weights[(g + 1) % groups];
        }
    }
    coincident + best
}

/// Beta-skeleton depth: the fraction of pairs `i < j` whose influence region
/// contains `q`. Pairs of coincident data points have no region and are
/// dropped from both the count and the normalizer.
pub fn beta_skeleton_depth(q: &Point, set: &PointSet, beta: Beta) -> Result<DepthResult> {
    let beta = beta.validate()?;
    let n = set.len();
    if n < 2 {
        return Err(DepthError::TooFewPoints {
            required: 2,
            found: n,
        });
    }
    if q.dim() != set.dim() {
        return Err(DepthError::DimensionMismatch {
            expected: set.dim(),
            found: q.dim(),
        });
    }
    let q = q.coords();
    let mut inside = 0u64;
    let mut degenerate = 0u64;
    for i in 0..n {
        let x_i = set.get(i);
        for j in (i + 1)..n {
            let x_j = set.get(j);
            if x_i == x_j {
                degenerate += 1;
            } else if pair_contains(x_i, x_j, q, beta) {
                inside += 1;
            }
        }
    }
    let normalizer = pair_total(n) - degenerate;
    if normalizer == 0 {
        return Err(DepthError::AllPairsDegenerate);
    }
    Ok(DepthResult::beta_skeleton(inside, normalizer, beta))
}

/// Beta-skeleton depth of every row of `queries`, in order.
pub fn beta_skeleton_depths(
    queries: &PointSet,
    set: &PointSet,
    beta: Beta,
) -> Result<Vec<DepthResult>> {
    queries
        .points()
        .par_iter()
        .map(|q| beta_skeleton_depth(q, set, beta))
        .collect()
}

/// `C(n, 2)`.
pub(crate) fn pair_total(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Convenience for planar call sites holding raw coordinates.
pub fn beta_skeleton_depth_xy(q: [f64; 2], set: &PointSet, beta: Beta) -> Result<DepthResult> {
    beta_skeleton_depth(&Point::new(q.to_vec())?, set, beta)
}
