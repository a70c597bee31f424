//! Wide `r`-disk domains on `S^2`: exact arc boundary, area, perimeter,
//! width and inradius.

mod arc;
mod width;

pub use arc::{exterior_angles, gauss_bonnet_area, Arc};
pub use width::{polar_curve, width_2d, WidthResult};

pub(crate) use arc::{angle_about, frame_toward};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::generators::GeneratorSet;
use crate::minimax::circumradius_minimax;
use crate::sphere::UnitVector;
use crate::vector::cross3;
use crate::Scalar;

/// Boundary of `B[X, r]` on `S^2` as a closed counterclockwise cycle of
/// radius-`r` arcs. A single generator gives one full-circle arc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ArcBoundary<T: Scalar> {
    pub radius: T,
    pub arcs: Vec<Arc<T>>,
    /// Chebyshev centre of the generators, the point the vertices are ordered around.
    pub center: UnitVector<T>,
    /// Generators after merging numerically coincident points.
    pub generators: Vec<UnitVector<T>>,
    /// Input indices dropped as duplicates of an earlier generator.
    pub duplicates: Vec<usize>,
    /// Indices into `generators` whose circle carries no arc.
    pub redundant: Vec<usize>,
    /// Number of circle intersection points merged into a neighbour (concurrent or tangent circles).
    pub merged_vertices: usize,
}

struct Vertex<T: Scalar> {
    point: UnitVector<T>,
    circles: Vec<usize>,
}

/// The two intersection points of `S(a, r)` and `S(b, r)`, if any.
pub(crate) fn circle_intersections<T: Scalar>(a: &UnitVector<T>, b: &UnitVector<T>, r: T) -> Option<[UnitVector<T>; 2]> {
    let g = a.dot(b);
    let alpha = r.cos() / (T::one() + g);
    let h = T::one() - T::two() * alpha * alpha * (T::one() + g);
    let n = cross3(a.coords(), b.coords());
    let nn = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if h < -T::alg_tol() || nn <= T::epsilon() {
        return None;
    }
    let beta = h.max(T::zero()).sqrt() / nn;
    let mk = |s: T| {
        UnitVector::normalized(
            (0..3)
                .map(|k| alpha * (a.coords()[k] + b.coords()[k]) + s * beta * n[k])
                .collect(),
        )
    };
    Some([mk(T::one()), mk(-T::one())])
}

/// The two points at distance `ra` from `a` and `rb` from `b`, if any.
pub(crate) fn circle_pair_intersections<T: Scalar>(
    a: &UnitVector<T>,
    ra: T,
    b: &UnitVector<T>,
    rb: T,
) -> Option<[UnitVector<T>; 2]> {
    let g = a.dot(b);
    let n = cross3(a.coords(), b.coords());
    let nn2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if nn2 <= T::epsilon() {
        return None;
    }
    let (ca, cb) = (ra.cos(), rb.cos());
    let det = T::one() - g * g;
    let alpha = (ca - g * cb) / det;
    let beta = (cb - g * ca) / det;
    let h = T::one() - (alpha * alpha + beta * beta + T::two() * alpha * beta * g);
    if h < -T::alg_tol() {
        return None;
    }
    let gamma = (h.max(T::zero()) / nn2).sqrt();
    let mk = |s: T| {
        UnitVector::normalized(
            (0..3)
                .map(|k| alpha * a.coords()[k] + beta * b.coords()[k] + s * gamma * n[k])
                .collect(),
        )
    };
    Some([mk(T::one()), mk(-T::one())])
}

/// Computes the arc boundary of the wide `r`-disk domain generated by `x`.
pub fn boundary_structure<T: Scalar>(x: &GeneratorSet<T>) -> Result<ArcBoundary<T>> {
    if x.dim() != 2 {
        return Err(GeomError::Input(format!("disk domains live on S^2, got dimension {}", x.dim())));
    }
    let r = x.radius();
    let tol = T::geo_tol();

    let mut generators: Vec<UnitVector<T>> = Vec::new();
    let mut duplicates = Vec::new();
    for (i, p) in x.points().iter().enumerate() {
        if generators.iter().any(|g| g.dist(p) < tol) {
            duplicates.push(i);
        } else {
            generators.push(p.clone());
        }
    }
    let center = circumradius_minimax(&generators)?.center;

    if generators.len() == 1 {
        let g = generators[0].clone();
        let (e1, _) = frame_toward(&g, &g);
        let start = g.walk(&e1, r);
        return Ok(ArcBoundary {
            radius: r,
            arcs: vec![Arc::ccw(g, start.clone(), start)],
            center,
            generators,
            duplicates,
            redundant: Vec::new(),
            merged_vertices: 0,
        });
    }

    let inside = |y: &UnitVector<T>| generators.iter().all(|g| g.dist(y) <= r + tol);
    let merge_tol = tol * T::lit(0.1);
    let mut vertices: Vec<Vertex<T>> = Vec::new();
    let mut merged_vertices = 0;
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let Some(pair) = circle_intersections(&generators[i], &generators[j], r) else {
                continue;
            };
            for y in pair {
                if !inside(&y) {
                    continue;
                }
                if let Some(v) = vertices.iter_mut().find(|v| v.point.dist(&y) < merge_tol) {
                    merged_vertices += 1;
                    for k in [i, j] {
                        if !v.circles.contains(&k) {
                            v.circles.push(k);
                        }
                    }
                } else {
                    vertices.push(Vertex { point: y, circles: vec![i, j] });
                }
            }
        }
    }
    if vertices.len() < 2 {
        return Err(GeomError::Structure(format!(
            "{} boundary vertices for {} distinct generators",
            vertices.len(),
            generators.len()
        )));
    }
    // a vertex also lies on every circle passing through it within tolerance
    for v in vertices.iter_mut() {
        for (k, g) in generators.iter().enumerate() {
            if !v.circles.contains(&k) && (g.dist(&v.point) - r).abs() <= tol {
                v.circles.push(k);
            }
        }
    }

    let (e1, e2) = frame_toward(&center, &vertices[0].point);
    vertices.sort_by(|a, b| {
        angle_about(&a.point, &e1, &e2)
            .partial_cmp(&angle_about(&b.point, &e1, &e2))
            .unwrap()
    });

    let n = vertices.len();
    let mut arcs = Vec::with_capacity(n);
    let mut used = vec![false; generators.len()];
    for k in 0..n {
        let (a, b) = (&vertices[k], &vertices[(k + 1) % n]);
        let mut best: Option<(T, usize, Arc<T>)> = None;
        for &c in a.circles.iter().filter(|c| b.circles.contains(c)) {
            let arc = Arc::ccw(generators[c].clone(), a.point.clone(), b.point.clone());
            let mid = arc.point_at(T::half());
            let violation = generators
                .iter()
                .map(|g| g.dist(&mid) - r)
                .fold(T::neg_infinity(), T::max);
            if best.as_ref().is_none_or(|(v, _, _)| violation < *v) {
                best = Some((violation, c, arc));
            }
        }
        match best {
            Some((violation, c, arc)) if violation <= tol => {
                used[c] = true;
                arcs.push(arc);
            }
            _ => {
                return Err(GeomError::Structure(format!(
                    "no generator circle joins boundary vertices {k} and {}",
                    (k + 1) % n
                )))
            }
        }
    }
    let redundant = (0..generators.len()).filter(|&i| !used[i]).collect();
    Ok(ArcBoundary {
        radius: r,
        arcs,
        center,
        generators,
        duplicates,
        redundant,
        merged_vertices,
    })
}

impl<T: Scalar> ArcBoundary<T> {
    /// Area by Gauss-Bonnet: `2 pi - sum(exterior angles) - cos(r) sum(spans)`.
    pub fn area(&self) -> T {
        gauss_bonnet_area(&self.arcs)
    }

    /// Total arc length, `sin(r) sum(spans)`.
    pub fn perimeter(&self) -> T {
        self.arcs.iter().map(Arc::length).sum()
    }

    pub fn vertices(&self) -> Vec<UnitVector<T>> {
        if self.arcs.len() == 1 {
            return Vec::new();
        }
        self.arcs.iter().map(|a| a.from.clone()).collect()
    }

    pub fn exterior_angles(&self) -> Vec<T> {
        exterior_angles(&self.arcs)
    }

    /// Membership in the domain, `dist(y, x) <= r + tol` for every generator.
    pub fn contains(&self, y: &UnitVector<T>, tol: T) -> bool {
        self.generators.iter().all(|g| g.dist(y) <= self.radius + tol)
    }

    /// Minimum of `<u, y>` over the domain.
    pub fn min_dot(&self, u: &UnitVector<T>) -> T {
        if self.contains(&u.antipode(), T::zero()) {
            return -T::one();
        }
        self.arcs
            .iter()
            .map(|a| a.min_dot(u.coords()))
            .fold(T::infinity(), T::min)
    }

    /// About `n` boundary points spaced evenly by arc length.
    pub fn sample_boundary(&self, n: usize) -> Vec<UnitVector<T>> {
        let total = self.perimeter();
        let mut out = Vec::with_capacity(n + self.arcs.len());
        for a in &self.arcs {
            let k = ((a.length() / total).as_f64() * n as f64).ceil() as usize + 1;
            let mut pts = a.sample(k.max(2));
            pts.pop();
            out.extend(pts);
        }
        out
    }

    /// Checks closure, vertex membership and convexity of every corner.
    pub fn validate(&self) -> Result<()> {
        let tol = T::geo_tol();
        let n = self.arcs.len();
        if n == 0 {
            return Err(GeomError::Structure("empty boundary".into()));
        }
        for (k, a) in self.arcs.iter().enumerate() {
            let next = &self.arcs[(k + 1) % n];
            if a.to.dist(&next.from) > tol {
                return Err(GeomError::Structure(format!("arc {k} does not end where arc {} starts", (k + 1) % n)));
            }
            for p in [&a.from, &a.to] {
                if (a.center.dist(p) - self.radius).abs() > tol {
                    return Err(GeomError::Structure(format!("arc {k} endpoint off its circle")));
                }
                if !self.contains(p, tol) {
                    return Err(GeomError::Structure(format!("vertex of arc {k} outside the domain")));
                }
            }
        }
        for (k, t) in self.exterior_angles().into_iter().enumerate() {
            if t < -tol || t >= T::PI() {
                return Err(GeomError::Structure(format!("corner {k} has exterior angle {t}")));
            }
        }
        Ok(())
    }
}

/// Inradius of `B[X, r]` on `S^2` with its centre, `r - circumradius(X)`.
pub fn inradius_2d<T: Scalar>(x: &GeneratorSet<T>) -> Result<(T, UnitVector<T>)> {
    if x.dim() != 2 {
        return Err(GeomError::Input(format!("expected a generator set on S^2, got dimension {}", x.dim())));
    }
    let c = circumradius_minimax(x.points())?;
    Ok((x.radius() - c.radius, c.center))
}
