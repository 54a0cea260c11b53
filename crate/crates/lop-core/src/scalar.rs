//! Scalar abstraction: any IEEE float usable as the real type of the crate.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar underlying all complex arithmetic: f32 or f64.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

/// Convert an f64 constant (tolerances, fixed angles) into the working scalar.
pub fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in scalar type")
}
