//! Positroid cells of the totally nonnegative Grassmannian and their images
//! in the hypersimplex and the m = 2 amplituhedron.
//!
//! Cells are labeled by [`DecoratedPermutation`]s. From a label the library
//! builds Le-diagrams, plabic graphs, networks, positroids and positroid
//! polytopes, and checks dissections, triangulations and regular subdivisions
//! exactly over the rationals.

pub mod dissect;
pub mod error;
pub mod hull;
pub mod lediagram;
pub mod linalg;
pub mod lp;
pub mod maps;
pub mod perm;
pub mod plabic;
pub mod polytope;
pub mod positroid;
pub mod scalar;
pub mod subsets;
pub mod tropical;

pub use error::{Error, Result};
pub use lediagram::LeDiagram;
pub use perm::{AffinePermutation, Color, DecoratedPermutation};
pub use plabic::PlabicGraph;
pub use positroid::Positroid;
pub use scalar::Scalar;
pub use tropical::TropPluckerVector;

/// Exact rationals; the only type used on certified paths.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;

pub type RatMatrix = linalg::Matrix<Rat>;
pub type F64Matrix = linalg::Matrix<f64>;
pub type F32Matrix = linalg::Matrix<f32>;
pub type RatProgram = lp::LinearProgram<Rat>;
pub type F64Program = lp::LinearProgram<f64>;
