//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the geometry is computed in (`f32` or `f64`).
///
/// Tolerances are expressed per type: the `f64` values are the documented
/// defaults, the `f32` values are scaled to its much shorter mantissa.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Tolerance for containment and incidence decisions.
    const GEO_TOL: f64;
    /// Tolerance for pure arithmetic identities.
    const ALG_TOL: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }

    #[inline]
    fn geo_tol() -> Self {
        Self::lit(Self::GEO_TOL)
    }

    #[inline]
    fn alg_tol() -> Self {
        Self::lit(Self::ALG_TOL)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    /// `acos` with the argument clamped to `[-1, 1]`.
    #[inline]
    fn acos_clamped(self) -> Self {
        self.max(-Self::one()).min(Self::one()).acos()
    }

    /// `asin` with the argument clamped to `[-1, 1]`.
    #[inline]
    fn asin_clamped(self) -> Self {
        self.max(-Self::one()).min(Self::one()).asin()
    }
}

impl Scalar for f64 {
    const GEO_TOL: f64 = 1e-9;
    const ALG_TOL: f64 = 1e-12;
}

impl Scalar for f32 {
    const GEO_TOL: f64 = 1e-4;
    const ALG_TOL: f64 = 1e-5;
}
