//! Brute-force oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use rand::Rng;
use robust::{orient2d, Coord};
use skdepth::{Beta, BoundingBox, PointSet};

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// `p` lies on the ray from `q` through `k`, given the three are collinear and `k ≠ q`.
fn same_ray(q: [f64; 2], k: [f64; 2], p: [f64; 2]) -> bool {
    let side = |a: f64, b: f64| a.partial_cmp(&b).unwrap();
    if k[0] != q[0] {
        side(p[0], q[0]) == side(k[0], q[0])
    } else {
        side(p[1], q[1]) == side(k[1], q[1])
    }
}

/// Minimum number of points in a closed halfplane whose boundary passes
/// through `q`, by trying both rotations next to every critical direction.
///
/// The boundary line through `q` and `k` splits the points by the sign of
/// `orient2d(q, k, p)`. Tilting the line slightly moves the collinear points
/// onto one side or the other according to which ray from `q` they sit on.
pub fn min_halfplane_count_brute(q: [f64; 2], points: &[[f64; 2]]) -> u64 {
    let at_q = points.iter().filter(|&&p| p == q).count() as u64;
    let mut best = points.len() as u64;
    for &k in points {
        if k == q {
            continue;
        }
        let (mut left, mut right, mut forward, mut backward) = (0u64, 0u64, 0u64, 0u64);
        for &p in points {
            if p == q {
                continue;
            }
            let o = orient2d(coord(q), coord(k), coord(p));
            if o > 0.0 {
                left += 1;
            } else if o < 0.0 {
                right += 1;
            } else if same_ray(q, k, p) {
                forward += 1;
            } else {
                backward += 1;
            }
        }
        // Tilting the boundary puts one ray on each side, either way round.
        for candidate in [
            left + forward,
            left + backward,
            right + forward,
            right + backward,
        ] {
            best = best.min(candidate + at_q);
        }
    }
    best
}

/// Planar beta-skeleton membership slack from the lens/disk/slab definition,
/// written independently of the library's anchor-relative evaluation.
/// Positive inside, negative outside, relative to the squared pair length.
pub fn skeleton_slack(x_i: [f64; 2], x_j: [f64; 2], q: [f64; 2], beta: Beta) -> f64 {
    let d = [x_j[0] - x_i[0], x_j[1] - x_i[1]];
    let l2 = d[0] * d[0] + d[1] * d[1];
    match beta {
        Beta::Infinite => {
            let t = (q[0] - x_i[0]) * d[0] + (q[1] - x_i[1]) * d[1];
            let s = (q[0] - x_j[0]) * d[0] + (q[1] - x_j[1]) * d[1];
            t.min(-s) / l2
        }
        Beta::Finite(b) => {
            let r2 = (b / 2.0).powi(2) * l2;
            let c1 = [x_j[0] - b / 2.0 * d[0], x_j[1] - b / 2.0 * d[1]];
            let c2 = [x_i[0] + b / 2.0 * d[0], x_i[1] + b / 2.0 * d[1]];
            let gap = |c: [f64; 2]| r2 - (q[0] - c[0]).powi(2) - (q[1] - c[1]).powi(2);
            gap(c1).min(gap(c2)) / (b * b * l2)
        }
    }
}

pub fn skeleton_contains_brute(x_i: [f64; 2], x_j: [f64; 2], q: [f64; 2], beta: Beta) -> bool {
    skeleton_slack(x_i, x_j, q, beta) >= 0.0
}

/// Number of unordered pairs of distinct points whose region contains `q`,
/// and the number of such pairs.
pub fn skeleton_count_brute(q: [f64; 2], points: &[[f64; 2]], beta: Beta) -> (u64, u64) {
    let (mut inside, mut pairs) = (0, 0);
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            if a == b {
                continue;
            }
            pairs += 1;
            if skeleton_contains_brute(a, b, q, beta) {
                inside += 1;
            }
        }
    }
    (inside, pairs)
}

pub fn random_beta<R: Rng>(rng: &mut R) -> Beta {
    match rng.random_range(0..6) {
        0 => Beta::Finite(1.0),
        1 => Beta::Infinite,
        2 => Beta::Finite(1.0 + rng.random::<f64>()),
        3 => Beta::Finite(2.0 + 3.0 * rng.random::<f64>()),
        _ => Beta::Finite(1.0 + 10f64.powf(4.0 * rng.random::<f64>())),
    }
}

pub fn random_point<R: Rng>(rng: &mut R, half: f64) -> [f64; 2] {
    [rng.random_range(-half..half), rng.random_range(-half..half)]
}

pub fn desk_square() -> BoundingBox {
    BoundingBox::square(10.0).unwrap()
}

pub fn xy(set: &PointSet) -> Vec<[f64; 2]> {
    set.iter().map(|p| [p[0], p[1]]).collect()
}

/// Integer-grid point set, which produces many collinear and duplicate points.
pub fn grid_points<R: Rng>(rng: &mut R, n: usize, half: i32) -> Vec<[f64; 2]> {
    (0..n)
        .map(|_| {
            [
                f64::from(rng.random_range(-half..=half)),
                f64::from(rng.random_range(-half..=half)),
            ]
        })
        .collect()
}
