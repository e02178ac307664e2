use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, Num};

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Any field-like number a count ratio can be stored in. Covers the float
/// types as well as `num_rational::Ratio`.
pub trait Scalar: Num + FromPrimitive + Copy + PartialOrd + Debug {}

impl<T: Num + FromPrimitive + Copy + PartialOrd + Debug> Scalar for T {}

/// Converts a count into the scalar type. Counts in this crate are far below
/// the range where any supported scalar loses integers.
pub(crate) fn from_count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}
