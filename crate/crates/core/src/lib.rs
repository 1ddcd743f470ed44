//! Polynomial diffusion models on images of the sphere under finite
//! orthogonal groups: exact algebra, group invariants, a model catalog,
//! symbolic verification and numerical cross-checks.

pub mod algebra;
pub mod catalog;
pub mod groups;
pub mod modelcheck;
pub mod numerics;
pub mod sphereops;

pub use algebra::{AlgebraError, ExactScalar, MultiPoly, PolyMatrix, ScalarMatrix, UniPoly};
pub use sphereops::Sphere;
