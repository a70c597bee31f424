//! Finite generator sets `X` with `diam(X) <= r`, defining `X^r = B[X, r]`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::sphere::{check_radius, diameter_pair, UnitVector};
use crate::Scalar;

/// A nonempty point set of diameter at most `radius`; its `radius`-dual
/// `B[X, radius]` is a wide ball body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeneratorSet<T>", into = "RawGeneratorSet<T>")]
#[serde(bound = "T: Scalar")]
pub struct GeneratorSet<T: Scalar> {
    dim: usize,
    radius: T,
    points: Vec<UnitVector<T>>,
}

/// Wire form: `{"dim": d, "radius": r, "points": [[x0, ..., xd], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct RawGeneratorSet<T: Scalar> {
    dim: usize,
    radius: T,
    points: Vec<Vec<T>>,
}

impl<T: Scalar> TryFrom<RawGeneratorSet<T>> for GeneratorSet<T> {
    type Error = GeomError;
    fn try_from(raw: RawGeneratorSet<T>) -> Result<Self> {
        let points = raw
            .points
            .into_iter()
            .map(UnitVector::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.dim, raw.radius, points)
    }
}

impl<T: Scalar> From<GeneratorSet<T>> for RawGeneratorSet<T> {
    fn from(g: GeneratorSet<T>) -> Self {
        Self {
            dim: g.dim,
            radius: g.radius,
            points: g.points.into_iter().map(UnitVector::into_coords).collect(),
        }
    }
}

impl<T: Scalar> GeneratorSet<T> {
    /// Validates dimensions, the radius range and the wideness condition
    /// `diam(points) <= radius` (up to the arithmetic tolerance).
    pub fn new(dim: usize, radius: T, points: Vec<UnitVector<T>>) -> Result<Self> {
        if dim < 2 {
            return Err(GeomError::DimensionTooSmall(dim));
        }
        check_radius(radius)?;
        if points.is_empty() {
            return Err(GeomError::Empty);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeomError::DimensionMismatch {
                expected: dim + 1,
                found: p.dim() + 1,
            });
        }
        let (diam, i, j) = diameter_pair(&points)?;
        if diam >= T::PI() - T::alg_tol() {
            return Err(GeomError::Antipodal(i, j));
        }
        if diam > radius + T::alg_tol() {
            return Err(GeomError::NotWide {
                diameter: diam.as_f64(),
                radius: radius.as_f64(),
            });
        }
        Ok(Self { dim, radius, points })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| GeomError::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("generator set serializes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn points(&self) -> &[UnitVector<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same generators with one more point; fails if wideness breaks.
    pub fn with_point(&self, p: UnitVector<T>) -> Result<Self> {
        let mut pts = self.points.clone();
        pts.push(p);
        Self::new(self.dim, self.radius, pts)
    }

    /// Applies a common linear isometry (row-major `(d+1) x (d+1)` matrix).
    pub fn transformed(&self, m: &[T]) -> Self {
        Self {
            dim: self.dim,
            radius: self.radius,
            points: self.points.iter().map(|p| p.transform(m)).collect(),
        }
    }

    /// `true` iff `y` lies within `radius + tol` of every generator, i.e. `y` is in `X^r`.
    pub fn contains_dual(&self, y: &UnitVector<T>, tol: T) -> bool {
        let bound = self.radius + tol;
        // Inner-product screen; only points near the sphere of radius `bound` pay for the exact distance.
        let margin = T::lit(1e-6);
        let cos_out = (bound + margin).min(T::PI()).cos();
        let cos_in = if bound > margin { (bound - margin).cos() } else { T::one() + T::one() };
        self.points.iter().all(|x| {
            let g = x.dot(y);
            g >= cos_in || (g >= cos_out && x.dist(y) <= bound)
        })
    }

    pub fn cast<U: Scalar>(&self) -> GeneratorSet<U> {
        GeneratorSet {
            dim: self.dim,
            radius: U::lit(self.radius.as_f64()),
            points: self.points.iter().map(UnitVector::cast).collect(),
        }
    }
}

/// Membership of `y` in `B[X, r]` with the default geometric tolerance.
pub fn dual_membership<T: Scalar>(y: &UnitVector<T>, x: &GeneratorSet<T>) -> Result<bool> {
    dual_membership_tol(y, x, T::alg_tol())
}

/// Membership of `y` in `B[X, r]`: `dist(y, x) <= r + tol` for every generator `x`.
pub fn dual_membership_tol<T: Scalar>(y: &UnitVector<T>, x: &GeneratorSet<T>, tol: T) -> Result<bool> {
    if y.dim() != x.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: x.dim() + 1,
            found: y.dim() + 1,
        });
    }
    Ok(x.contains_dual(y, tol))
}
