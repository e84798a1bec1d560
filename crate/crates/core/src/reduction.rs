//! Planar beta-skeleton depth as range counting.
//!
//! Translate the query `q` to the origin and fix a data point with offset
//! `a = x_i − q ≠ 0`. For another point with offset `b ≠ 0`, the origin lies in
//! `S_beta(a, b)` exactly when
//!
//! ```text
//! a·b ≤ ((beta − 1)/beta)·‖a‖²        (closed halfplane ħ)
//! ‖b − k·a‖ ≥ k·‖a‖                   (outside the open disk B)
//! ```
//!
//! with `k = beta / (2(beta − 1))`. Summing, over every `x_i`, the number of
//! points in `ħ \ int B` counts every qualifying pair twice. How `|ħ \ int B|`
//! is split into primitive counts depends on where the line of `ħ` cuts `B`,
//! which changes at `beta = 2 + √2` where the line passes through the centre.

use std::collections::HashMap;
use std::f64::consts::SQRT_2;

use crate::counting::RangeCounter;
use crate::depth::{pair_total, DepthResult};
use crate::error::{DepthError, Result};
use crate::geometry::{Beta, Point, PointSet};

/// Beta at which the halfplane boundary passes through the disk centre.
pub const REGIME_THRESHOLD: f64 = 2.0 + SQRT_2;

fn dot(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[0] + u[1] * v[1]
}

/// `normal·b ≤ offset`, or `<` when `open`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Halfplane {
    pub normal: [f64; 2],
    pub offset: f64,
    pub open: bool,
}

impl Halfplane {
    pub fn closed(normal: [f64; 2], offset: f64) -> Self {
        Self {
            normal,
            offset,
            open: false,
        }
    }

    /// The set-theoretic complement (the closed side becomes open and vice versa).
    pub fn complement(&self) -> Self {
        Self {
            normal: [-self.normal[0], -self.normal[1]],
            offset: -self.offset,
            open: !self.open,
        }
    }

    pub fn contains(&self, b: [f64; 2]) -> bool {
        let s = dot(self.normal, b);
        if self.open {
            s < self.offset
        } else {
            s <= self.offset
        }
    }
}

/// `‖b − center‖² ≤ radius_sq`, or `<` when `open`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: [f64; 2],
    pub radius_sq: f64,
    pub open: bool,
}

impl Disk {
    pub fn closed(center: [f64; 2], radius: f64) -> Self {
        Self {
            center,
            radius_sq: radius * radius,
            open: false,
        }
    }

    /// Closed disk centred at `center` whose boundary passes through the origin.
    pub fn through_origin(center: [f64; 2]) -> Self {
        Self {
            center,
            radius_sq: dot(center, center),
            open: false,
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius_sq.sqrt()
    }

    pub fn interior(&self) -> Self {
        Self { open: true, ..*self }
    }

    pub fn contains(&self, b: [f64; 2]) -> bool {
        let dx = b[0] - self.center[0];
        let dy = b[1] - self.center[1];
        let d2 = dx * dx + dy * dy;
        if self.open {
            d2 < self.radius_sq
        } else {
            d2 <= self.radius_sq
        }
    }
}

/// A counting range: a halfplane, a disk, or their intersection (a circular cap).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Range {
    Halfplane(Halfplane),
    Disk(Disk),
    Cap(Disk, Halfplane),
}

impl Range {
    pub fn contains(&self, b: [f64; 2]) -> bool {
        match self {
            Range::Halfplane(h) => h.contains(b),
            Range::Disk(d) => d.contains(b),
            Range::Cap(d, h) => d.contains(b) && h.contains(b),
        }
    }
}

/// How `|ħ \ int B|` is assembled from primitive counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `beta = 1`: the halfplane alone.
    BetaOne,
    /// `1 < beta < 2 + √2`: `|ħ| − |B| + |B \ ħ|`.
    LowBeta,
    /// `2 + √2 ≤ beta < ∞`: `|ħ| − |B ∩ ħ|`.
    HighBeta,
    /// `beta = ∞`: `B ⊆ ħ`, so `|ħ| − |B|`.
    BetaInf,
}

impl Regime {
    pub fn of(beta: Beta) -> Self {
        match beta {
            Beta::Infinite => Regime::BetaInf,
            Beta::Finite(1.0) => Regime::BetaOne,
            Beta::Finite(b) if b < REGIME_THRESHOLD => Regime::LowBeta,
            Beta::Finite(_) => Regime::HighBeta,
        }
    }
}

/// One signed summand of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub sign: i8,
    pub range: Range,
}

/// The halfplane and disk attached to one data point, in query-centred coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeTriple {
    pub halfplane: Halfplane,
    /// Closed disk `B`; absent for `beta = 1`.
    pub disk: Option<Disk>,
    pub regime: Regime,
}

/// Ranges for data point `x_i` seen from query `q`.
pub fn build_ranges(x_i: &Point, q: &Point, beta: Beta) -> Result<RangeTriple> {
    let x = x_i.planar()?;
    let q = q.planar()?;
    if x == q {
        return Err(DepthError::CoincidentPoints);
    }
    RangeTriple::for_offset([x[0] - q[0], x[1] - q[1]], beta)
}

impl RangeTriple {
    /// Ranges for the query-centred offset `a = x_i − q`.
    pub fn for_offset(a: [f64; 2], beta: Beta) -> Result<Self> {
        let beta = beta.validate()?;
        if a == [0.0, 0.0] {
            return Err(DepthError::CoincidentPoints);
        }
        let norm_sq = dot(a, a);
        let regime = Regime::of(beta);
        let triple = match beta {
            Beta::Finite(_) if regime == Regime::BetaOne => {
                Self {
                    halfplane: Halfplane::closed(a, 0.0),
                    disk: None,
                    regime,
                }
            }
            Beta::Finite(b) => {
                let k = b / (2.0 * (b - 1.0));
                let center = [k * a[0], k * a[1]];
                Self {
                    halfplane: Halfplane::closed(a, (b - 1.0) / b * norm_sq),
                    disk: Some(Disk::through_origin(center)),
                    regime,
                }
            }
            Beta::Infinite => {
                let center = [a[0] / 2.0, a[1] / 2.0];
                Self {
                    halfplane: Halfplane::closed(a, norm_sq),
                    disk: Some(Disk::through_origin(center)),
                    regime,
                }
            }
        };
        debug_assert!(triple.line_meets_disk(), "halfplane line misses disk: {triple:?}");
        Ok(triple)
    }

    /// The boundary line of `ħ` is at distance at most `r` from the disk centre.
    pub fn line_meets_disk(&self) -> bool {
        let Some(disk) = self.disk else {
            return true;
        };
        let n = self.halfplane.normal;
        let gap = (dot(n, disk.center) - self.halfplane.offset).abs() / dot(n, n).sqrt();
        gap <= disk.radius() * (1.0 + 1e-12)
    }

    /// `b ∈ ħ \ int B`.
    pub fn admits(&self, b: [f64; 2]) -> bool {
        self.halfplane.contains(b) && self.disk.is_none_or(|d| !d.interior().contains(b))
    }

    /// Signed primitive ranges whose counts sum to `|ħ \ int B|`, for this triple's regime.
    pub fn decompose(&self) -> Vec<Term> {
        self.decompose_as(self.regime)
            .expect("a triple always decomposes in its own regime")
    }

    /// Decomposition under an explicit regime. Every regime except
    /// [`Regime::BetaOne`] needs a disk; any two valid decompositions give
    /// identical counts.
    pub fn decompose_as(&self, regime: Regime) -> Option<Vec<Term>> {
        let h = self.halfplane;
        let plus = |range| Term { sign: 1, range };
        let minus = |range| Term { sign: -1, range };
        let terms = match (regime, self.disk.map(|d| d.interior())) {
            (Regime::BetaOne, _) => vec![plus(Range::Halfplane(h))],
            (Regime::LowBeta, Some(inner)) => vec![
                plus(Range::Halfplane(h)),
                minus(Range::Disk(inner)),
                plus(Range::Cap(inner, h.complement())),
            ],
            (Regime::HighBeta, Some(inner)) => {
                vec![plus(Range::Halfplane(h)), minus(Range::Cap(inner, h))]
            }
            (Regime::BetaInf, Some(inner)) => {
                vec![plus(Range::Halfplane(h)), minus(Range::Disk(inner))]
            }
            (_, None) => return None,
        };
        Some(terms)
    }
}

/// Pair membership through the reduction: `b ∈ ħ(a) \ int B(a)` with
/// `a = x_i − q`, `b = x_j − q`. Agrees with the influence-region test away
/// from region boundaries.
pub fn membership_via_reduction(x_i: &Point, x_j: &Point, q: &Point, beta: Beta) -> Result<bool> {
    let xi = x_i.planar()?;
    let xj = x_j.planar()?;
    let q = q.planar()?;
    if xj == q || xi == xj {
        return Err(DepthError::CoincidentPoints);
    }
    let triple = build_ranges(x_i, &Point::xy(q[0], q[1]), beta)?;
    Ok(triple.admits([xj[0] - q[0], xj[1] - q[1]]))
}

/// Bit pattern of a coordinate pair with `-0.0` folded into `0.0`, so that map
/// lookups agree with `==` on `f64`.
fn key(p: [f64; 2]) -> [u64; 2] {
    [(p[0] + 0.0).to_bits(), (p[1] + 0.0).to_bits()]
}

/// Planar beta-skeleton depth assembled from range counts.
///
/// `counter` must be built over `set`. Each data point distinct from `q`
/// contributes `c_i = |ħ(x_i) \ int B(x_i)|` over the other points distinct
/// from both `q` and `x_i`; the raw count is `(1/2)·Σ c_i` plus `z·(n − z)` for
/// the `z` points coincident with `q`, each of which pairs with every point
/// different from it. Pairs of coincident data points are excluded from the
/// normalizer. With an exact counter the result equals
/// [`crate::beta_skeleton_depth`] whenever no point sits on a region boundary.
pub fn depth_via_counts(
    q: &Point,
    set: &PointSet,
    beta: Beta,
    counter: &RangeCounter,
) -> Result<DepthResult> {
    let beta = beta.validate()?;
    let q = q.planar()?;
    let points = set.planar_points()?;
    let n = points.len();
    if n < 2 {
        return Err(DepthError::TooFewPoints {
            required: 2,
            found: n,
        });
    }
    if counter.base_size() != n {
        return Err(DepthError::LengthMismatch {
            left: counter.base_size(),
            right: n,
        });
    }

    let mut multiplicity: HashMap<[u64; 2], u64> = HashMap::with_capacity(n);
    for p in &points {
        *multiplicity.entry(key(*p)).or_default() += 1;
    }
    let duplicate_pairs: u64 = multiplicity.values().map(|&m| m * (m - 1) / 2).sum();
    let normalizer = pair_total(n) - duplicate_pairs;
    if normalizer == 0 {
        return Err(DepthError::AllPairsDegenerate);
    }
    let at_query = multiplicity.get(&key(q)).copied().unwrap_or(0);

    let mut directed = 0.0;
    for &x in &points {
        if x == q {
            continue;
        }
        let a = [x[0] - q[0], x[1] - q[1]];
        let own = multiplicity[&key(x)] as f64;
        let triple = RangeTriple::for_offset(a, beta)?;
        for term in triple.decompose() {
            let mut c = counter.count_translated(&term.range, q);
            if term.range.contains([0.0, 0.0]) {
                c -= at_query as f64;
            }
            if term.range.contains(a) {
                c -= own;
            }
            directed += f64::from(term.sign) * c;
        }
    }

    let coincident_pairs = (at_query * (n as u64 - at_query)) as f64;
    let raw = (coincident_pairs + directed / 2.0).clamp(0.0, normalizer as f64);
    let mut result = if counter.is_exact() {
        DepthResult::beta_skeleton(raw.floor() as u64, normalizer, beta)
    } else {
        let mut r = DepthResult::beta_skeleton(raw.round() as u64, normalizer, beta);
        r.value = raw / normalizer as f64;
        r
    };
    result.value = result.value.clamp(0.0, 1.0);
    Ok(result)
}

/// Sum of the per-point directed counts `Σ c_i` (exact counter), exposed for
/// the double-counting check.
pub fn directed_pair_sum(q: &Point, set: &PointSet, beta: Beta) -> Result<u64> {
    let q = q.planar()?;
    let points = set.planar_points()?;
    let mut total = 0u64;
    for &x in &points {
        if x == q {
            continue;
        }
        let triple = RangeTriple::for_offset([x[0] - q[0], x[1] - q[1]], beta)?;
        total += points
            .iter()
            .filter(|&&y| y != q && y != x)
            .filter(|&&y| triple.admits([y[0] - q[0], y[1] - q[1]]))
            .count() as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::RangeCounter;
    use crate::depth::beta_skeleton_depth;

    fn finite(b: f64) -> Beta {
        Beta::Finite(b)
    }

    #[test]
    fn ranges_for_lens_depth() {
        let t = RangeTriple::for_offset([2.0, 0.0], finite(2.0)).unwrap();
        assert_eq!(t.halfplane, Halfplane::closed([2.0, 0.0], 2.0));
        assert_eq!(t.disk, Some(Disk::closed([2.0, 0.0], 2.0)));
        assert_eq!(t.disk.unwrap().radius(), 2.0);
        assert_eq!(t.regime, Regime::LowBeta);
    }

    #[test]
    fn ranges_at_infinity_are_the_limits() {
        let t = RangeTriple::for_offset([2.0, 0.0], Beta::Infinite).unwrap();
        assert_eq!(t.halfplane, Halfplane::closed([2.0, 0.0], 4.0));
        assert_eq!(t.disk, Some(Disk::closed([1.0, 0.0], 1.0)));
        assert_eq!(t.regime, Regime::BetaInf);
        // Finite beta approaches the same ranges.
        let near = RangeTriple::for_offset([2.0, 0.0], finite(1e9)).unwrap();
        assert!((near.halfplane.offset - 4.0).abs() < 1e-8);
        let d = near.disk.unwrap();
        assert!((d.center[0] - 1.0).abs() < 1e-8 && (d.radius() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ranges_for_spherical_depth() {
        let t = RangeTriple::for_offset([0.0, 3.0], finite(1.0)).unwrap();
        assert_eq!(t.halfplane, Halfplane::closed([0.0, 3.0], 0.0));
        assert_eq!(t.disk, None);
        assert_eq!(t.regime, Regime::BetaOne);
    }

    #[test]
    fn regimes() {
        assert_eq!(Regime::of(finite(1.0)), Regime::BetaOne);
        assert_eq!(Regime::of(finite(1.5)), Regime::LowBeta);
        assert_eq!(Regime::of(finite(REGIME_THRESHOLD)), Regime::HighBeta);
        assert_eq!(Regime::of(finite(3.0)), Regime::LowBeta);
        assert_eq!(Regime::of(finite(3.5)), Regime::HighBeta);
        assert_eq!(Regime::of(Beta::Infinite), Regime::BetaInf);
    }

    #[test]
    fn threshold_line_passes_through_center() {
        let t = RangeTriple::for_offset([1.3, -0.4], finite(REGIME_THRESHOLD)).unwrap();
        let c = t.disk.unwrap().center;
        let lhs = dot(t.halfplane.normal, c);
        assert!((lhs - t.halfplane.offset).abs() < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let o = Point::xy(0.0, 0.0);
        let a = Point::xy(2.0, 0.0);
        assert!(!membership_via_reduction(&a, &Point::xy(1.0, 1.0), &o, finite(2.0)).unwrap());
        assert!(membership_via_reduction(&a, &Point::xy(-1.0, 0.0), &o, finite(2.0)).unwrap());
        assert!(membership_via_reduction(&o, &a, &o, finite(2.0)).is_err());
        assert!(build_ranges(&o, &o, finite(2.0)).is_err());
    }

    #[test]
    fn points_on_disk_boundary_are_admitted() {
        // b on the circle ‖b − (1,0)‖ = 1 and inside ħ: a·b = 2 ≤ 4.
        let t = RangeTriple::for_offset([2.0, 0.0], Beta::Infinite).unwrap();
        assert!(t.admits([1.0, 1.0]));
        assert!(!t.admits([1.0, 0.9]));
        // On the line of ħ but inside B.
        let t = RangeTriple::for_offset([2.0, 0.0], finite(2.0)).unwrap();
        assert!(!t.admits([1.0, 1.0]));
    }

    #[test]
    fn two_point_lens() {
        let s = PointSet::from_xy(&[[-1.0, 0.0], [1.0, 0.0]]).unwrap();
        let counter = RangeCounter::exact(&s).unwrap();
        let d = depth_via_counts(&Point::xy(0.0, 0.0), &s, finite(2.0), &counter).unwrap();
        assert_eq!((d.raw_count, d.normalizer, d.value), (1, 1, 1.0));
    }

    #[test]
    fn query_on_data_point_and_duplicates() {
        let s = PointSet::from_xy(&[
            [0.0, 0.0],
            [0.0, 0.0],
            [1.0, 2.0],
            [1.0, 2.0],
            [-3.0, 0.5],
            [2.0, -1.0],
        ])
        .unwrap();
        let counter = RangeCounter::exact(&s).unwrap();
        for q in [[0.0, 0.0], [1.0, 2.0], [0.2, 0.3], [-3.0, 0.5]] {
            let q = Point::xy(q[0], q[1]);
            // Several pairs sit exactly on region boundaries here; these betas
            // keep every boundary test exact in floating point.
            for beta in [finite(1.0), finite(2.0), Beta::Infinite] {
                let exact = beta_skeleton_depth(&q, &s, beta).unwrap();
                let reduced = depth_via_counts(&q, &s, beta, &counter).unwrap();
                assert_eq!(exact, reduced, "q={q:?} beta={beta}");
            }
        }
    }

    #[test]
    fn decompositions_agree_at_threshold() {
        let s = PointSet::uniform_2d(60, crate::BoundingBox::square(3.0).unwrap(), 9);
        let pts = s.planar_points().unwrap();
        let t = RangeTriple::for_offset([0.7, 0.2], finite(REGIME_THRESHOLD)).unwrap();
        let total = |terms: Vec<Term>| -> i64 {
            terms
                .iter()
                .map(|t| i64::from(t.sign) * pts.iter().filter(|p| t.range.contains(**p)).count() as i64)
                .sum()
        };
        let low = total(t.decompose_as(Regime::LowBeta).unwrap());
        let high = total(t.decompose_as(Regime::HighBeta).unwrap());
        let direct = pts.iter().filter(|p| t.admits(**p)).count() as i64;
        assert_eq!(low, direct);
        assert_eq!(high, direct);
    }

    #[test]
    fn counter_must_match_set() {
        let s = PointSet::from_xy(&[[0.0, 1.0], [1.0, 0.0], [2.0, 2.0]]).unwrap();
        let other = PointSet::from_xy(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let counter = RangeCounter::exact(&other).unwrap();
        assert!(depth_via_counts(&Point::xy(0.0, 0.0), &s, finite(2.0), &counter).is_err());
    }
}
