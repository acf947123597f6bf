//! Numerical toolkit for radial curvature comparison geometry.
//!
//! Given the radial curvature function `K` of a noncompact model surface
//! of revolution, the crate computes the warping function `f`, the total
//! curvature `c = 2π ∫ K f dt`, the volume growth of the n-dimensional
//! model space, and the resulting cap on the number of ends of a manifold
//! whose radial curvature is bounded below by `K`.

pub mod asymptotics;
pub mod cli;
pub mod ends;
pub mod error;
pub mod extrapolate;
pub mod gallery;
pub mod jacobi;
pub mod model_space;
pub mod pipeline;
pub mod profile;
pub mod quadrature;

pub use error::{Error, Result};
pub use jacobi::{solve, solve_m, WarpingSolution};
pub use profile::{CurvatureProfile, Expr, MomentClass, Segment, TailModel};
pub use asymptotics::{
    m_prime_limit, slope_limit, total_curvature, Classification, LimitEstimate,
    TotalCurvatureResult,
};
pub use ends::{angle_bound, ends_bound, packing_bound, EndsBound};
pub use gallery::{entry_by_name, list_gallery, GalleryEntry};
pub use model_space::{unit_sphere_volume, GrowthCoefficient, ModelSpace};
pub use pipeline::{evaluate_theorem, ingest_samples, Config, Options, TheoremReport, VolumeSamples};
