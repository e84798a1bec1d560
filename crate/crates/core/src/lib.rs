//! Data depth in the plane and beyond: exact halfspace (Tukey) depth,
//! beta-skeleton depth for any `beta >= 1` including `beta = ∞`, a
//! range-counting formulation of planar beta-skeleton depth with exact and
//! sampled counters, and tools for comparing depth functions.
//!
//! ```
//! use skdepth::{beta_skeleton_depth, halfspace_depth_2d, Beta, Point, PointSet};
//!
//! let set = PointSet::from_xy(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).unwrap();
//! let q = Point::xy(0.0, 0.0);
//! assert_eq!(halfspace_depth_2d(&q, &set).unwrap().value, 1.0);
//! assert_eq!(beta_skeleton_depth(&q, &set, Beta::Finite(2.0)).unwrap().value, 1.0);
//! ```

pub mod analysis;
pub mod counting;
pub mod depth;
mod error;
pub mod geometry;
pub mod reduction;

pub use counting::{
    approx_beta_skeleton_depth, sample_size, CounterConfig, CounterMode, RangeCounter,
};
pub use depth::{
    beta_skeleton_depth, beta_skeleton_depths, halfspace_depth_2d, halfspace_depths_2d,
    DepthKind, DepthResult,
};
pub use error::{DepthError, Result};
pub use geometry::{
    influence_area, influence_region, lens_area, lens_half_height, Beta, BoundingBox,
    InfluenceRegion, Point, PointSet,
};
pub use reduction::{
    build_ranges, depth_via_counts, membership_via_reduction, Disk, Halfplane, Range,
    RangeTriple, Regime, REGIME_THRESHOLD,
};
