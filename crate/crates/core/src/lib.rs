//! Geometry of intersections of congruent balls on the unit sphere `S^d`.
//!
//! A finite point set `X` with spherical diameter at most `r` generates the
//! wide ball body `X^r = B[X, r]`, the intersection of the radius-`r` balls
//! centred at its points. This crate computes with such bodies: the exact arc
//! boundary, area and width on `S^2`, and inradius, `r`-hull, width and volume
//! estimates in any dimension.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `f64` aliases
//! below are what most callers want.

pub mod body;
pub mod disk;
pub mod error;
pub mod generators;
pub mod measure;
pub mod minimax;
pub mod proof;
pub mod sampling;
mod scalar;
pub mod simplex;
pub mod sphere;
pub mod vector;

pub use error::{GeomError, Result};
pub use generators::{dual_membership, dual_membership_tol, GeneratorSet};
pub use scalar::Scalar;
pub use sphere::{diameter, spherical_distance, BallSpec, Lune, UnitVector};

pub type UnitVector64 = UnitVector<f64>;
pub type UnitVector32 = UnitVector<f32>;
pub type GeneratorSet64 = GeneratorSet<f64>;
pub type GeneratorSet32 = GeneratorSet<f32>;
pub type ArcBoundary64 = disk::ArcBoundary<f64>;
pub type Lune64 = Lune<f64>;
