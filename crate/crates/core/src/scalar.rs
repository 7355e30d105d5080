//! Floating point scalar abstraction used by the evaluator.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar type the evaluator is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for literals.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}
