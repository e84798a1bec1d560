//! Shared fixtures for the depth benchmarks.

use skdepth::{BoundingBox, PointSet};

/// Uniform data and query sets in `[-10, 10]²`.
pub fn fixture(n_data: usize, n_query: usize, seed: u64) -> (PointSet, PointSet) {
    let bbox = BoundingBox::square(10.0).expect("valid square");
    (
        PointSet::uniform_2d(n_data, bbox, seed),
        PointSet::uniform_2d(n_query, bbox, seed.wrapping_add(1)),
    )
}
