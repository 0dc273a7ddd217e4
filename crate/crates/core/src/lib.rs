//! Numerical laboratory for lattices in R^n: shortest vectors and point
//! counts, Haar-like random lattices, one-parameter flows and their
//! excursions, Siegel-type averages, and continued-fraction diagnostics
//! for orbits attached to real numbers.
//!
//! The crate is generic over the floating scalar through [`Scalar`]
//! (`f32` or `f64`); exact integer and rational arithmetic is used
//! internally where a float would silently lose the answer. Concrete
//! `f64` aliases are exported at the root.

pub mod consts;
pub mod dioph;
pub mod error;
pub mod flows;
pub mod lattice;
pub mod mat;
pub mod region;
pub mod sampling;
pub mod scalar;
pub mod transforms;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` lattice basis.
pub type Basis64 = lattice::LatticeBasis<f64>;
/// `f64` square matrix.
pub type Matrix64 = mat::SquareMatrix<f64>;
/// `f64` region.
pub type Region64 = region::Region<f64>;
/// `f64` lattice vector.
pub type Vector64 = lattice::LatticeVector<f64>;
