//! Floating scalar abstraction for every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the numeric layers are generic over.
///
/// Implemented for `f32` and `f64`. The trait is a pure marker over the
/// `num-traits` vocabulary; dense spectra are computed by an `f64` kernel
/// internally (see [`crate::spin::dense`]), so `f32` instantiation trades no
/// correctness, only the precision of inputs and outputs.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for lossy conversion from `f64` (used to inject tolerance
    /// constants and bridge the dense kernel).
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any Scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
