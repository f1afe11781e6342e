//! Scalar abstraction: all numerics are generic over a floating-point type.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the solvers are generic over (f32 or f64).
pub trait Real:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Shorthand for converting an f64 literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal not representable")
    }

    fn pi() -> Self {
        Self::of(std::f64::consts::PI)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Real for f32 {}
impl Real for f64 {}
