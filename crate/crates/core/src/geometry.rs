//! Points, point sets, the beta parameter, and the beta-skeleton influence region.
//!
//! The influence region of a pair `(x_i, x_j)` is the intersection of two closed
//! balls of radius `(beta/2)·‖x_i − x_j‖` centred at
//! `c_i = (beta/2)·x_i + (1 − beta/2)·x_j` and `c_j = (1 − beta/2)·x_i + (beta/2)·x_j`.
//! For `beta = ∞` it degenerates to the closed slab bounded by the two
//! hyperplanes through `x_i` and `x_j` orthogonal to `x_j − x_i`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DepthError, Result};

/// A point in `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(DepthError::EmptyPoint);
        }
        check_finite(&coords)?;
        Ok(Self { coords })
    }

    /// Planar point.
    ///
    /// # Panics
    /// If either coordinate is NaN or infinite.
    pub fn xy(x: f64, y: f64) -> Self {
        Self::new(vec![x, y]).expect("planar point coordinates must be finite")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub(crate) fn planar(&self) -> Result<[f64; 2]> {
        as_planar(&self.coords)
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point::xy(p[0], p[1])
    }
}

fn check_finite(coords: &[f64]) -> Result<()> {
    match coords.iter().position(|c| !c.is_finite()) {
        Some(index) => Err(DepthError::NonFinite {
            index,
            value: coords[index],
        }),
        None => Ok(()),
    }
}

pub(crate) fn as_planar(coords: &[f64]) -> Result<[f64; 2]> {
    match coords {
        [x, y] => Ok([*x, *y]),
        _ => Err(DepthError::NotPlanar(coords.len())),
    }
}

/// Axis-aligned rectangle used for seeded point generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BoundingBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let all = [xmin, xmax, ymin, ymax];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(DepthError::InvalidBoundingBox(
                "bounds must be finite".to_owned(),
            ));
        }
        if xmin >= xmax || ymin >= ymax {
            return Err(DepthError::InvalidBoundingBox(format!(
                "[{xmin}, {xmax}] x [{ymin}, {ymax}] is empty"
            )));
        }
        Ok(Self {
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    /// The square `[-half, half]^2`.
    pub fn square(half: f64) -> Result<Self> {
        Self::new(-half, half, -half, half)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        (self.xmin..=self.xmax).contains(&p[0]) && (self.ymin..=self.ymax).contains(&p[1])
    }
}

/// An ordered collection of points sharing one dimension, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    seed: Option<u64>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().map_or(2, Point::dim);
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in &points {
            if p.dim() != dim {
                return Err(DepthError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            coords.extend_from_slice(p.coords());
        }
        Ok(Self {
            dim,
            coords,
            seed: None,
        })
    }

    pub fn from_xy(points: &[[f64; 2]]) -> Result<Self> {
        Self::from_flat(2, points.iter().flatten().copied().collect())
    }

    /// Builds a set from row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(DepthError::EmptyPoint);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(DepthError::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        check_finite(&coords)?;
        Ok(Self {
            dim,
            coords,
            seed: None,
        })
    }

    /// `n` points drawn uniformly from `bbox` with a ChaCha8 stream seeded by `seed`.
    pub fn uniform_2d(n: usize, bbox: BoundingBox, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::uniform_2d_from(&mut rng, n, bbox).with_seed(seed)
    }

    /// Draws `n` planar points from an existing generator, so that several
    /// sets can share one seeded stream.
    pub fn uniform_2d_from<R: Rng>(rng: &mut R, n: usize, bbox: BoundingBox) -> Self {
        let mut coords = Vec::with_capacity(2 * n);
        for _ in 0..n {
            coords.push(rng.random_range(bbox.xmin..=bbox.xmax));
            coords.push(rng.random_range(bbox.ymin..=bbox.ymax));
        }
        Self {
            dim: 2,
            coords,
            seed: None,
        }
    }

    /// `n` points uniform in the cube `[lo, hi]^dim`.
    pub fn uniform_cube(n: usize, dim: usize, lo: f64, hi: f64, seed: u64) -> Self {
        assert!(dim >= 1 && lo < hi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n * dim).map(|_| rng.random_range(lo..=hi)).collect();
        Self {
            dim,
            coords,
            seed: Some(seed),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn point(&self, i: usize) -> Point {
        Point {
            coords: self.get(i).to_vec(),
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn points(&self) -> Vec<Point> {
        self.iter().map(|c| Point { coords: c.to_vec() }).collect()
    }

    pub(crate) fn planar_points(&self) -> Result<Vec<[f64; 2]>> {
        if self.dim != 2 {
            return Err(DepthError::NotPlanar(self.dim));
        }
        Ok(self.coords.chunks_exact(2).map(|c| [c[0], c[1]]).collect())
    }

    /// Applies `f` to every point. The result must stay finite and keep a uniform dimension.
    pub fn map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Vec<f64>,
    {
        let mapped: Vec<Point> = self
            .iter()
            .map(|c| Point::new(f(c)))
            .collect::<Result<_>>()?;
        let mut out = Self::new(mapped)?;
        out.seed = self.seed;
        Ok(out)
    }
}

/// The beta parameter of the skeleton influence region, `beta >= 1` or infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    /// Classifies `value`; `+∞` becomes [`Beta::Infinite`].
    pub fn new(value: f64) -> Result<Self> {
        let beta = if value == f64::INFINITY {
            Beta::Infinite
        } else {
            Beta::Finite(value)
        };
        beta.validate()
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Beta::Finite(b) if !(b.is_finite() && b >= 1.0) => Err(DepthError::InvalidBeta(b)),
            _ => Ok(self),
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Beta::Finite(b) => Some(b),
            Beta::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Beta::Infinite)
    }

    /// `beta + 1`, with `∞ + 1 = ∞`.
    pub fn succ(self) -> Self {
        match self {
            Beta::Finite(b) => Beta::Finite(b + 1.0),
            Beta::Infinite => Beta::Infinite,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{b}"),
            Beta::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Beta {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let value = match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => f64::INFINITY,
            other => other
                .parse::<f64>()
                .map_err(|e| format!("invalid beta {s:?}: {e}"))?,
        };
        Beta::new(value).map_err(|e| e.to_string())
    }
}

/// The closed beta-skeleton influence region of an ordered pair of points.
///
/// Centres are stored implicitly through `half_axis = (beta/2)(x_i − x_j)`,
/// so that `c_i = x_j + half_axis` and `c_j = x_i − half_axis`. Membership is
/// evaluated relative to the anchors, which keeps the boundary cases
/// `q = x_i` and `q = x_j` exact in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceRegion {
    beta: Beta,
    x_i: Vec<f64>,
    x_j: Vec<f64>,
    half_axis: Vec<f64>,
}

/// Builds the influence region of `(x_i, x_j)`.
pub fn influence_region(x_i: &Point, x_j: &Point, beta: Beta) -> Result<InfluenceRegion> {
    InfluenceRegion::new(x_i.coords(), x_j.coords(), beta)
}

impl InfluenceRegion {
    pub fn new(x_i: &[f64], x_j: &[f64], beta: Beta) -> Result<Self> {
        let beta = beta.validate()?;
        if x_i.len() != x_j.len() {
            return Err(DepthError::DimensionMismatch {
                expected: x_i.len(),
                found: x_j.len(),
            });
        }
        check_finite(x_i)?;
        check_finite(x_j)?;
        if x_i == x_j {
            return Err(DepthError::CoincidentPoints);
        }
        let scale = beta.finite().map_or(0.0, |b| b / 2.0);
        let half_axis = x_i.iter().zip(x_j).map(|(a, b)| scale * (a - b)).collect();
        Ok(Self {
            beta,
            x_i: x_i.to_vec(),
            x_j: x_j.to_vec(),
            half_axis,
        })
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn is_slab(&self) -> bool {
        self.beta.is_infinite()
    }

    /// `c_i`, or `None` for the slab.
    pub fn center_i(&self) -> Option<Vec<f64>> {
        (!self.is_slab()).then(|| {
            self.x_j
                .iter()
                .zip(&self.half_axis)
                .map(|(x, h)| x + h)
                .collect()
        })
    }

    /// `c_j`, or `None` for the slab.
    pub fn center_j(&self) -> Option<Vec<f64>> {
        (!self.is_slab()).then(|| {
            self.x_i
                .iter()
                .zip(&self.half_axis)
                .map(|(x, h)| x - h)
                .collect()
        })
    }

    /// Common radius of both balls, or `None` for the slab.
    pub fn radius(&self) -> Option<f64> {
        (!self.is_slab()).then(|| norm_sq(&self.half_axis).sqrt())
    }

    /// Closed membership test.
    ///
    /// # Panics
    /// If `q` has a different dimension than the region.
    pub fn contains(&self, q: &[f64]) -> bool {
        assert_eq!(q.len(), self.x_i.len(), "query dimension mismatch");
        match self.beta {
            Beta::Infinite => slab_contains(&self.x_i, &self.x_j, q),
            Beta::Finite(_) => lens_contains(&self.x_i, &self.x_j, &self.half_axis, q),
        }
    }
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn slab_contains(x_i: &[f64], x_j: &[f64], q: &[f64]) -> bool {
    let mut from_i = 0.0;
    let mut from_j = 0.0;
    for k in 0..q.len() {
        let d = x_j[k] - x_i[k];
        from_i += d * (q[k] - x_i[k]);
        from_j += -d * (q[k] - x_j[k]);
    }
    from_i >= 0.0 && from_j >= 0.0
}

fn lens_contains(x_i: &[f64], x_j: &[f64], half_axis: &[f64], q: &[f64]) -> bool {
    let mut r2 = 0.0;
    let mut to_ci = 0.0;
    let mut to_cj = 0.0;
    for k in 0..q.len() {
        let h = half_axis[k];
        let vi = (q[k] - x_j[k]) - h;
        let vj = (q[k] - x_i[k]) + h;
        r2 += h * h;
        to_ci += vi * vi;
        to_cj += vj * vj;
    }
    to_ci <= r2 && to_cj <= r2
}

/// Allocation-free membership of `q` in the region of `(x_i, x_j)`; the pair
/// must not coincide. Agrees bit-for-bit with [`InfluenceRegion::contains`].
pub(crate) fn pair_contains(x_i: &[f64], x_j: &[f64], q: &[f64], beta: Beta) -> bool {
    match beta {
        Beta::Infinite => slab_contains(x_i, x_j, q),
        Beta::Finite(b) => {
            let scale = b / 2.0;
            let mut r2 = 0.0;
            let mut to_ci = 0.0;
            let mut to_cj = 0.0;
            for k in 0..q.len() {
                let h = scale * (x_i[k] - x_j[k]);
                let vi = (q[k] - x_j[k]) - h;
                let vj = (q[k] - x_i[k]) + h;
                r2 += h * h;
                to_ci += vi * vi;
                to_cj += vj * vj;
            }
            to_ci <= r2 && to_cj <= r2
        }
    }
}

/// Area of the planar lens `S_beta` for a pair at distance `l`, `beta > 1` finite.
///
/// With `r = beta·l/2`, centre distance `d = (beta − 1)·l`, half-chord
/// `a = (l/2)·sqrt(2·beta − 1)` and half-aperture `θ = acos((beta − 1)/beta)`,
/// the lens is two circular segments of area `r²θ − (d/2)·a` each, so
/// `A = 2·r²·θ − d·a`.
pub fn lens_area(beta: f64, l: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 1.0) {
        return Err(DepthError::InvalidBeta(beta));
    }
    if !(l.is_finite() && l > 0.0) {
        return Err(DepthError::CoincidentPoints);
    }
    let r = beta * l / 2.0;
    let theta = ((beta - 1.0) / beta).acos();
    let d = (beta - 1.0) * l;
    Ok(2.0 * r * r * theta - d * lens_half_height(beta, l))
}

/// Area of any planar influence region: the disk of diameter `l` for
/// `beta = 1`, the lens for `1 < beta < ∞`, and `+∞` for the slab.
pub fn influence_area(beta: Beta, l: f64) -> Result<f64> {
    match beta.validate()? {
        Beta::Infinite => Ok(f64::INFINITY),
        Beta::Finite(1.0) => {
            if !(l.is_finite() && l > 0.0) {
                return Err(DepthError::CoincidentPoints);
            }
            Ok(PI * l * l / 4.0)
        }
        Beta::Finite(b) => lens_area(b, l),
    }
}

/// Half-height `(l/2)·sqrt(2·beta − 1)` of the planar lens, measured from the
/// segment `x_i x_j` to a lens tip.
pub fn lens_half_height(beta: f64, l: f64) -> f64 {
    (l / 2.0) * (2.0 * beta - 1.0).sqrt()
}
