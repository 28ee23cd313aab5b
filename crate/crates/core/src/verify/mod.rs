//! Numerical certification of the identities, bounds and covering statements.
//!
//! Every check is a pure function of its inputs and seed. Random draws come
//! from per-sample substreams, so results do not depend on scheduling.

pub mod bounds;
pub mod calculus;
pub mod covering;
pub mod detector;
pub mod identities;
pub mod injectivity;
pub mod random;
pub mod report;
pub mod seeds;

use crate::clifford::Multivector;

pub use bounds::{check_equality_cases, check_growth_distortion, is_koebe_rotation, KoebeRotation};
pub use covering::{check_koebe_quarter, winding_count};
pub use detector::{check_detector, detect_rotated_slice_preserving, Detection};
pub use identities::{check_convex_combination, check_identity_general, check_representation, sphere_extrema_check};
pub use injectivity::check_slice_injectivity;
pub use report::CheckReport;
pub use seeds::{koebe_series, moebius_series, seed_catalog, SeedFunction, SliceForm, SliceFunction};

/// Radius of the disc from which identity and bound samples are drawn.
pub const SAMPLE_RADIUS: f64 = 0.9;

/// `|l - r| / (1 + |l| + |r|)`.
pub fn relative(l: f64, r: f64) -> f64 {
    (l - r).abs() / (1.0 + l.abs() + r.abs())
}

/// Multivector form of [`relative`].
pub fn relative_mv(l: &Multivector, r: &Multivector) -> f64 {
    l.distance(r) / (1.0 + l.norm() + r.norm())
}
