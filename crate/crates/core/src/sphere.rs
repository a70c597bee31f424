//! Points, balls and lunes on the unit sphere `S^d` embedded in `E^{d+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::vector::{axpy, dot, lin2, norm, reject, scale};
use crate::Scalar;

/// A point of `S^d`, stored as a unit vector with `d + 1` coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound = "T: Scalar")]
pub struct UnitVector<T: Scalar> {
    coords: Vec<T>,
}

impl<T: Scalar> UnitVector<T> {
    /// Normalizes `coords`; rejects the zero vector and spheres of dimension below 2.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(GeomError::DimensionTooSmall(coords.len().saturating_sub(1)));
        }
        let n = norm(&coords);
        if !n.is_finite() || n <= T::min_positive_value().sqrt() {
            return Err(GeomError::ZeroVector);
        }
        // already unit up to rounding: keep the coordinates so serialization round-trips exactly
        if (n - T::one()).abs() <= T::lit(4.0) * T::epsilon() {
            return Ok(Self { coords });
        }
        Ok(Self {
            coords: scale(T::one() / n, &coords),
        })
    }

    /// Renormalizes without the dimension check; only for vectors known to be nonzero.
    pub(crate) fn normalized(coords: Vec<T>) -> Self {
        let n = norm(&coords);
        debug_assert!(n > T::zero(), "normalizing a zero vector");
        Self {
            coords: scale(T::one() / n, &coords),
        }
    }

    pub(crate) fn try_normalized(coords: Vec<T>) -> Option<Self> {
        let n = norm(&coords);
        (n.is_finite() && n > T::lit(1e-300_f64.max(T::min_positive_value().as_f64()))).then(|| Self {
            coords: scale(T::one() / n, &coords),
        })
    }

    /// The `axis`-th standard basis vector of `E^{dim+1}`.
    pub fn basis(dim: usize, axis: usize) -> Self {
        assert!(axis <= dim && dim >= 2);
        let mut coords = vec![T::zero(); dim + 1];
        coords[axis] = T::one();
        Self { coords }
    }

    /// The point `(0, ..., 0, 1)`.
    pub fn north_pole(dim: usize) -> Self {
        Self::basis(dim, dim)
    }

    /// Sphere dimension `d` (one less than the number of coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.coords, &other.coords)
    }

    pub fn antipode(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|&x| -x).collect(),
        }
    }

    /// Geodesic distance; both points must have the same dimension.
    ///
    /// Uses the chord length on the near side and the antipodal chord on the far
    /// side, so the result keeps full relative precision near `0` and `pi`.
    pub fn dist(&self, other: &Self) -> T {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        let d = self.dot(other);
        let two = T::two();
        if d >= T::zero() {
            let chord = self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<T>()
                .sqrt();
            two * (chord / two).asin_clamped()
        } else {
            let chord = self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| (a + b) * (a + b))
                .sum::<T>()
                .sqrt();
            T::PI() - two * (chord / two).asin_clamped()
        }
    }

    /// Unit tangent vector at `self` pointing along the geodesic towards `other`.
    /// `None` when `other` coincides with `self` or its antipode.
    pub fn tangent_toward(&self, other: &Self) -> Option<Vec<T>> {
        let t = reject(&other.coords, &self.coords);
        let n = norm(&t);
        (n > T::lit(1e-15).max(T::epsilon())).then(|| scale(T::one() / n, &t))
    }

    /// Walks distance `t` from `self` along the unit tangent `dir`.
    pub fn walk(&self, dir: &[T], t: T) -> Self {
        Self::normalized(lin2(t.cos(), &self.coords, t.sin(), dir))
    }

    /// Point at distance `t` from `self` on the geodesic through `toward`.
    pub fn toward(&self, toward: &Self, t: T) -> Option<Self> {
        self.tangent_toward(toward).map(|dir| self.walk(&dir, t))
    }

    /// Geodesic midpoint; `None` for antipodes.
    pub fn midpoint(&self, other: &Self) -> Option<Self> {
        let mut s = self.coords.clone();
        axpy(&mut s, T::one(), &other.coords);
        Self::try_normalized(s)
    }

    /// Applies a linear map given row-major as `(d+1) x (d+1)`.
    pub fn transform(&self, m: &[T]) -> Self {
        let n = self.coords.len();
        let out = (0..n)
            .map(|i| dot(&m[i * n..(i + 1) * n], &self.coords))
            .collect();
        Self::normalized(out)
    }

    /// Orthonormal basis of the tangent space at `self` (Gram-Schmidt on the standard basis).
    pub fn tangent_basis(&self) -> Vec<Vec<T>> {
        let n = self.coords.len();
        let mut basis: Vec<Vec<T>> = Vec::with_capacity(n - 1);
        let mut axes: Vec<usize> = (0..n).collect();
        // start from the axes least aligned with the point
        axes.sort_by(|&a, &b| self.coords[a].abs().partial_cmp(&self.coords[b].abs()).unwrap());
        for &k in &axes {
            if basis.len() == n - 1 {
                break;
            }
            let mut v = reject(&Self::basis(n - 1, k).coords, &self.coords);
            for b in &basis {
                v = reject(&v, b);
            }
            let len = norm(&v);
            if len > T::lit(1e-6) {
                basis.push(scale(T::one() / len, &v));
            }
        }
        basis
    }

    pub fn cast<U: Scalar>(&self) -> UnitVector<U> {
        UnitVector::normalized(self.coords.iter().map(|&x| U::lit(x.as_f64())).collect())
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for UnitVector<T> {
    type Error = GeomError;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T: Scalar> From<UnitVector<T>> for Vec<T> {
    fn from(u: UnitVector<T>) -> Self {
        u.coords
    }
}

/// Geodesic distance between two points of the same sphere, in `[0, pi]`.
pub fn spherical_distance<T: Scalar>(a: &UnitVector<T>, b: &UnitVector<T>) -> Result<T> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: a.coords.len(),
            found: b.coords.len(),
        });
    }
    Ok(a.dist(b))
}

/// Largest pairwise distance of a nonempty point set.
pub fn diameter<T: Scalar>(points: &[UnitVector<T>]) -> Result<T> {
    diameter_pair(points).map(|(d, _, _)| d)
}

/// Largest pairwise distance together with the indices attaining it.
pub fn diameter_pair<T: Scalar>(points: &[UnitVector<T>]) -> Result<(T, usize, usize)> {
    let first = points.first().ok_or(GeomError::Empty)?;
    let dim = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeomError::DimensionMismatch {
            expected: dim + 1,
            found: p.coords.len(),
        });
    }
    // min inner product <=> max distance; only the winner pays for the exact distance.
    let mut best = (T::infinity(), 0, 0);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let g = points[i].dot(&points[j]);
            if g < best.0 {
                best = (g, i, j);
            }
        }
    }
    if points.len() == 1 {
        return Ok((T::zero(), 0, 0));
    }
    let (_, i, j) = best;
    Ok((points[i].dist(&points[j]), i, j))
}

/// Largest distance from `y` to any point of `points` (0 for an empty set).
pub fn max_distance<T: Scalar>(y: &UnitVector<T>, points: &[UnitVector<T>]) -> T {
    points.iter().map(|p| y.dist(p)).fold(T::zero(), T::max)
}

/// Closed ball `B[center, radius]` with `0 < radius <= pi/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BallSpec<T: Scalar> {
    pub center: UnitVector<T>,
    pub radius: T,
}

impl<T: Scalar> BallSpec<T> {
    pub fn new(center: UnitVector<T>, radius: T) -> Result<Self> {
        check_radius(radius)?;
        Ok(Self { center, radius })
    }

    pub fn contains(&self, p: &UnitVector<T>, tol: T) -> bool {
        self.center.dist(p) <= self.radius + tol
    }
}

pub(crate) fn check_radius<T: Scalar>(r: T) -> Result<()> {
    if r > T::zero() && r <= T::FRAC_PI_2() + T::alg_tol() && r.is_finite() {
        Ok(())
    } else {
        Err(GeomError::InvalidRadius(r.as_f64()))
    }
}

/// Intersection of the closed hemispheres centred at `u` and `v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Lune<T: Scalar> {
    pub u: UnitVector<T>,
    pub v: UnitVector<T>,
}

impl<T: Scalar> Lune<T> {
    /// Rejects coincident and opposite hemispheres.
    pub fn new(u: UnitVector<T>, v: UnitVector<T>) -> Result<Self> {
        let d = spherical_distance(&u, &v)?;
        if d <= T::alg_tol() || d >= T::PI() - T::alg_tol() {
            return Err(GeomError::Degenerate(format!(
                "hemisphere centres at distance {d} do not bound a lune"
            )));
        }
        Ok(Self { u, v })
    }

    /// Dihedral angle of the lune, `pi - dist(u, v)`.
    pub fn width(&self) -> T {
        T::PI() - self.u.dist(&self.v)
    }

    pub fn contains(&self, p: &UnitVector<T>, tol: T) -> bool {
        p.dot(&self.u) >= -tol && p.dot(&self.v) >= -tol
    }

    /// Centres of the two half great spheres bounding the lune: the point of
    /// the boundary of `H(u)` nearest `v`, and symmetrically.
    pub fn face_centers(&self) -> (UnitVector<T>, UnitVector<T>) {
        let a = self.u.tangent_toward(&self.v).expect("lune centres are distinct");
        let b = self.v.tangent_toward(&self.u).expect("lune centres are distinct");
        (UnitVector::normalized(a), UnitVector::normalized(b))
    }
}

/// Distance `t` at which the geodesic `cos t * from + sin t * dir` leaves the
/// intersection of the balls `B[x, r]`, with the index of the binding ball.
///
/// `from` must lie in every ball and `dir` must be a unit tangent at `from`.
/// Each constraint `<g(t), x> >= cos r` reads `m cos(t - phi) >= cos r`, so the
/// exit distance has a closed form per ball.
pub fn ray_exit<T: Scalar>(from: &UnitVector<T>, dir: &[T], centers: &[UnitVector<T>], r: T) -> (T, usize) {
    let cr = r.cos();
    let mut best = (T::PI(), usize::MAX);
    for (i, x) in centers.iter().enumerate() {
        let a = from.dot(x);
        let b = dot(dir, x.coords());
        let m = (a * a + b * b).sqrt();
        if m <= T::epsilon() {
            continue;
        }
        let phi = b.atan2(a);
        let beta = (cr / m).acos_clamped();
        let t = (phi + beta).max(T::zero());
        if t < best.0 {
            best = (t, i);
        }
    }
    best
}
