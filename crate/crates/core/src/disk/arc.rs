//! Circular arcs on `S^2` and the Gauss-Bonnet area of closed arc paths.

use serde::{Deserialize, Serialize};

use crate::sphere::UnitVector;
use crate::vector::{cross3, dot};
use crate::Scalar;

/// Arc of the circle `S(center, rho)` traversed counterclockwise about
/// `center` (seen from outside the sphere) from `from` to `to`, sweeping the
/// central angle `span`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Arc<T: Scalar> {
    pub center: UnitVector<T>,
    pub from: UnitVector<T>,
    pub to: UnitVector<T>,
    pub span: T,
}

/// Orthonormal tangent frame `(e1, e2)` at `x` with `e1` pointing to `toward`
/// and `e1 x e2 = x`.
pub(crate) fn frame_toward<T: Scalar>(x: &UnitVector<T>, toward: &UnitVector<T>) -> ([T; 3], [T; 3]) {
    let e1 = x
        .tangent_toward(toward)
        .unwrap_or_else(|| any_tangent(x).to_vec());
    let e1 = [e1[0], e1[1], e1[2]];
    let e2 = cross3(x.coords(), &e1);
    (e1, e2)
}

pub(crate) fn any_tangent<T: Scalar>(x: &UnitVector<T>) -> [T; 3] {
    let c = x.coords();
    let axis = if c[0].abs() < T::lit(0.9) { [T::one(), T::zero(), T::zero()] } else { [T::zero(), T::one(), T::zero()] };
    let t = cross3(c, &axis);
    let n = dot(&t, &t).sqrt();
    [t[0] / n, t[1] / n, t[2] / n]
}

/// Counterclockwise angle of `p` about `x` measured from `e1`, in `[0, 2 pi)`.
pub(crate) fn angle_about<T: Scalar>(p: &UnitVector<T>, e1: &[T; 3], e2: &[T; 3]) -> T {
    let a = dot(p.coords(), e2).atan2(dot(p.coords(), e1));
    if a < T::zero() {
        a + T::two() * T::PI()
    } else {
        a
    }
}

/// Point of `S(x, rho)` at angle `phi` in the frame `(e1, e2)`.
pub(crate) fn circle_point<T: Scalar>(x: &UnitVector<T>, rho: T, e1: &[T; 3], e2: &[T; 3], phi: T) -> UnitVector<T> {
    let (c, s) = (rho.cos(), rho.sin());
    let (cp, sp) = (phi.cos(), phi.sin());
    let xc = x.coords();
    UnitVector::normalized(
        (0..3)
            .map(|k| c * xc[k] + s * (cp * e1[k] + sp * e2[k]))
            .collect(),
    )
}

/// Unit counterclockwise tangent at `p` of the circle centred at `x`.
pub(crate) fn ccw_tangent<T: Scalar>(x: &UnitVector<T>, p: &UnitVector<T>) -> [T; 3] {
    let t = cross3(x.coords(), p.coords());
    let n = dot(&t, &t).sqrt();
    [t[0] / n, t[1] / n, t[2] / n]
}

/// Signed turning angle at `p` from direction `a` to direction `b`, positive
/// for a left turn seen from outside the sphere.
pub(crate) fn turn_angle<T: Scalar>(p: &UnitVector<T>, a: &[T; 3], b: &[T; 3]) -> T {
    let c = cross3(a, b);
    dot(&c, p.coords()).atan2(dot(a, b))
}

impl<T: Scalar> Arc<T> {
    /// Builds the counterclockwise arc from `from` to `to` on the circle centred at `center`.
    /// Coincident endpoints give the full circle.
    pub fn ccw(center: UnitVector<T>, from: UnitVector<T>, to: UnitVector<T>) -> Self {
        let (e1, e2) = frame_toward(&center, &from);
        let mut span = angle_about(&to, &e1, &e2);
        if span <= T::lit(1e-12) {
            span = T::two() * T::PI();
        }
        Self { center, from, to, span }
    }

    /// Spherical radius of the carrying circle.
    pub fn radius(&self) -> T {
        self.center.dist(&self.from)
    }

    pub fn length(&self) -> T {
        self.radius().sin() * self.span
    }

    /// Point at fraction `s` in `[0, 1]` of the sweep.
    pub fn point_at(&self, s: T) -> UnitVector<T> {
        let (e1, e2) = frame_toward(&self.center, &self.from);
        circle_point(&self.center, self.radius(), &e1, &e2, s * self.span)
    }

    pub fn tangent_at_start(&self) -> [T; 3] {
        ccw_tangent(&self.center, &self.from)
    }

    pub fn tangent_at_end(&self) -> [T; 3] {
        ccw_tangent(&self.center, &self.to)
    }

    /// Minimum of `<u, y>` over the points `y` of the arc.
    pub fn min_dot(&self, u: &[T]) -> T {
        self.min_dot_at(u).0
    }

    /// Minimum of `<u, y>` over the arc with the angle (from `from`) where it is attained.
    pub fn min_dot_at(&self, u: &[T]) -> (T, T) {
        let rho = self.radius();
        let (e1, e2) = frame_toward(&self.center, &self.from);
        let a = rho.cos() * dot(u, self.center.coords());
        let b = rho.sin() * dot(u, &e1);
        let c = rho.sin() * dot(u, &e2);
        let f = |phi: T| a + b * phi.cos() + c * phi.sin();
        let mut best = (f(T::zero()), T::zero());
        let end = f(self.span);
        if end < best.0 {
            best = (end, self.span);
        }
        let mut star = (-c).atan2(-b);
        if star < T::zero() {
            star = star + T::two() * T::PI();
        }
        if star <= self.span && f(star) < best.0 {
            best = (f(star), star);
        }
        best
    }

    /// Point at central angle `phi` from `from`.
    pub fn point_at_angle(&self, phi: T) -> UnitVector<T> {
        let (e1, e2) = frame_toward(&self.center, &self.from);
        circle_point(&self.center, self.radius(), &e1, &e2, phi)
    }

    /// Evenly spaced points along the arc, including both endpoints.
    pub fn sample(&self, n: usize) -> Vec<UnitVector<T>> {
        let n = n.max(2);
        let rho = self.radius();
        let (e1, e2) = frame_toward(&self.center, &self.from);
        (0..n)
            .map(|k| {
                let s = T::lit(k as f64 / (n - 1) as f64);
                circle_point(&self.center, rho, &e1, &e2, s * self.span)
            })
            .collect()
    }
}

/// Exterior (turning) angles at the junctions of a closed counterclockwise
/// arc path; entry `k` is the turn from arc `k` into arc `k + 1`.
pub fn exterior_angles<T: Scalar>(arcs: &[Arc<T>]) -> Vec<T> {
    let n = arcs.len();
    (0..n)
        .map(|k| {
            let next = &arcs[(k + 1) % n];
            turn_angle(&arcs[k].to, &arcs[k].tangent_at_end(), &next.tangent_at_start())
        })
        .collect()
}

/// Area enclosed by a closed counterclockwise path of circular arcs, each
/// bounding the region from inside its circle:
/// `2 pi - sum(exterior angles) - sum(cos(rho_k) span_k)`.
/// An arc of spherical radius `rho` has geodesic curvature `cot rho` and length
/// `sin(rho) span`, which produces the last term.
pub fn gauss_bonnet_area<T: Scalar>(arcs: &[Arc<T>]) -> T {
    let turning: T = exterior_angles(arcs).into_iter().sum();
    let curvature: T = arcs.iter().map(|a| a.radius().cos() * a.span).sum();
    T::two() * T::PI() - turning - curvature
}
