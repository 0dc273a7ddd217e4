//! Scalar abstraction for the geometric core.
//!
//! The lattice, flow and region machinery is generic over a floating scalar
//! so the same code runs in `f32` and `f64`. Concrete aliases live at the
//! crate root; everything downstream of the Monte Carlo layer is `f64`.
//! Exact arithmetic (big integers, rationals, quadratic surds) is used in
//! the diophantine module and is deliberately *not* hidden behind this trait.

use num_traits::{Float as NtFloat, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating scalar for lattice geometry.
///
/// A blanket impl covers every type with the required `num-traits` bounds,
/// which in practice means `f32` and `f64`.
pub trait Scalar:
    NtFloat
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Shorthand for lossy conversion from `f64` (values used here are
    /// representable in every scalar we instantiate).
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 -> Scalar conversion")
    }

    /// Lossy widening to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar -> f64 conversion")
    }
}

impl<T> Scalar for T where
    T: NtFloat
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + LowerExp
        + Send
        + Sync
        + 'static
{
}
