//! Scalar abstractions.
//!
//! Floating-point code (eigensolvers, bounds, classification) is written
//! against [`Scalar`], implemented for `f32` and `f64`. The weight-class
//! constants can additionally be evaluated exactly through [`ExactField`],
//! which is implemented for `BigRational`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar used by the spectral routines.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Sum + Send + Sync + Default + 'static
{
    /// Default residual tolerance for power iteration at this precision.
    fn default_tol() -> Self;

    #[inline]
    fn of(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).unwrap()
    }

    #[inline]
    fn of_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).unwrap()
    }
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-5
    }
}

/// Ordered field that can represent small integer ratios.
///
/// Floats satisfy it approximately, `BigRational` exactly.
pub trait ExactField: Clone + PartialOrd + Num + Debug + ToPrimitive {
    fn from_int(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl ExactField for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl ExactField for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }
}

impl ExactField for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
