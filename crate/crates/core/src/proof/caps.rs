//! Cap domains: an inscribed disk with three caps bounded by radius-`r` arcs.

use serde::{Deserialize, Serialize};

use crate::disk::{circle_pair_intersections, frame_toward, exterior_angles, Arc, ArcBoundary};
use crate::error::{GeomError, Result};
use crate::sampling::SphereRng;
use crate::simplex::SimplexBody;
use crate::sphere::{BallSpec, UnitVector};
use crate::vector::dot;
use crate::Scalar;

use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CapKind {
    /// Built from an actual domain.
    #[serde(rename = "C")]
    Instance,
    /// Threefold symmetric comparison domain.
    #[serde(rename = "C*")]
    Symmetric,
}

/// Region between the incircle and two radius-`r` arcs from `apex` that touch
/// the incircle from inside their disks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Cap<T: Scalar> {
    pub apex: UnitVector<T>,
    /// Tangency points on the incircle, counterclockwise about its centre.
    pub tangency: [UnitVector<T>; 2],
    /// Centres of the two radius-`r` circles.
    pub arc_centers: [UnitVector<T>; 2],
    /// `tangency[0] -> apex` and `apex -> tangency[1]`.
    pub arcs: [Arc<T>; 2],
    pub area: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CapDomain<T: Scalar> {
    pub radius: T,
    pub incircle: BallSpec<T>,
    pub caps: Vec<Cap<T>>,
    pub kind: CapKind,
}

/// Signed angle of `y` about `c` measured from the direction of `reference`.
fn angle_from<T: Scalar>(c: &UnitVector<T>, reference: &UnitVector<T>, y: &UnitVector<T>) -> T {
    let (e1, e2) = frame_toward(c, reference);
    dot(y.coords(), &e2).atan2(dot(y.coords(), &e1))
}

impl<T: Scalar> Cap<T> {
    /// Builds the cap with apex `apex` over the incircle `B[c, rin]`.
    pub fn new(c: &UnitVector<T>, rin: T, r: T, apex: UnitVector<T>) -> Result<Self> {
        if c.dist(&apex) <= rin + T::alg_tol() {
            return Err(GeomError::Degenerate("cap apex inside the incircle".into()));
        }
        let centers = circle_pair_intersections(c, r - rin, &apex, r)
            .ok_or_else(|| GeomError::Degenerate("no radius-r circle through the apex touches the incircle".into()))?;
        let touch = |z: &UnitVector<T>| -> Result<UnitVector<T>> {
            let t = c
                .tangent_toward(z)
                .ok_or_else(|| GeomError::Degenerate("arc centre at the incircle centre".into()))?;
            Ok(c.walk(&t.iter().map(|&v| -v).collect::<Vec<_>>(), rin))
        };
        let mut sides = [(centers[0].clone(), touch(&centers[0])?), (centers[1].clone(), touch(&centers[1])?)];
        if angle_from(c, &apex, &sides[0].1) > angle_from(c, &apex, &sides[1].1) {
            sides.swap(0, 1);
        }
        let [(za, ta), (zb, tb)] = sides;
        let arcs = [Arc::ccw(za.clone(), ta.clone(), apex.clone()), Arc::ccw(zb.clone(), apex.clone(), tb.clone())];
        let inner = Arc::ccw(c.antipode(), tb.clone(), ta.clone());
        if arcs.iter().chain(std::iter::once(&inner)).any(|a| a.span > T::PI()) {
            return Err(GeomError::Degenerate("cap boundary arc longer than a half turn".into()));
        }
        // both tangency points are cusps turning back by pi
        let apex_turn = exterior_angles(&arcs)[0];
        let curvature: T = arcs.iter().chain(std::iter::once(&inner)).map(|a| a.radius().cos() * a.span).sum();
        let area = -apex_turn - curvature;
        Ok(Self {
            apex,
            tangency: [ta, tb],
            arc_centers: [za, zb],
            arcs,
            area,
        })
    }

    /// Closed boundary path: the two radius-`r` arcs and the incircle arc
    /// (traversed clockwise). The path has cusps at both tangency points.
    pub fn boundary(&self, c: &UnitVector<T>) -> Vec<Arc<T>> {
        let inner = Arc::ccw(c.antipode(), self.tangency[1].clone(), self.tangency[0].clone());
        vec![self.arcs[0].clone(), self.arcs[1].clone(), inner]
    }

    /// Membership with slack `tol`; a negative `tol` tests the interior.
    pub fn contains(&self, c: &UnitVector<T>, rin: T, r: T, y: &UnitVector<T>, tol: T) -> bool {
        if c.dist(y) < rin - tol || self.arc_centers.iter().any(|z| z.dist(y) > r + tol) {
            return false;
        }
        let lo = angle_from(c, &self.apex, &self.tangency[0]);
        let hi = angle_from(c, &self.apex, &self.tangency[1]);
        let a = angle_from(c, &self.apex, y);
        a >= lo - tol && a <= hi + tol
    }

    /// Random point of the cap (uniform in angle and radius, not in area).
    pub fn sample_point(&self, c: &UnitVector<T>, rin: T, r: T, rng: &mut SphereRng) -> UnitVector<T> {
        let lo = angle_from(c, &self.apex, &self.tangency[0]);
        let hi = angle_from(c, &self.apex, &self.tangency[1]);
        let (e1, e2) = frame_toward(c, &self.apex);
        let theta = lo + (hi - lo) * T::lit(rng.random::<f64>());
        let dir: Vec<T> = (0..3).map(|k| theta.cos() * e1[k] + theta.sin() * e2[k]).collect();
        let (reach, _) = crate::sphere::ray_exit(c, &dir, &self.arc_centers, r);
        let s = rin + (reach - rin).max(T::zero()) * T::lit(rng.random::<f64>());
        c.walk(&dir, s)
    }
}

impl<T: Scalar> CapDomain<T> {
    pub fn center(&self) -> &UnitVector<T> {
        &self.incircle.center
    }

    pub fn inradius(&self) -> T {
        self.incircle.radius
    }

    pub fn incircle_area(&self) -> T {
        T::two() * T::PI() * (T::one() - self.incircle.radius.cos())
    }

    /// Area of the incircle plus the caps, valid when the caps do not overlap.
    pub fn area(&self) -> T {
        self.incircle_area() + self.caps.iter().map(|c| c.area).sum::<T>()
    }

    pub fn contains(&self, y: &UnitVector<T>, tol: T) -> bool {
        let (c, rin) = (self.center(), self.inradius());
        c.dist(y) <= rin + tol || self.caps.iter().any(|cap| cap.contains(c, rin, self.radius, y, tol))
    }

    /// Closed counterclockwise boundary path of the whole domain, alternating
    /// cap arcs and incircle arcs. Requires non-overlapping caps.
    pub fn boundary(&self) -> Vec<Arc<T>> {
        let c = self.center();
        let mut caps: Vec<&Cap<T>> = self.caps.iter().collect();
        let first = caps[0].apex.clone();
        caps.sort_by(|a, b| {
            let key = |cap: &Cap<T>| {
                let a = angle_from(c, &first, &cap.apex);
                if a < T::zero() { a + T::two() * T::PI() } else { a }
            };
            key(a).partial_cmp(&key(b)).unwrap()
        });
        let mut out = Vec::new();
        for (k, cap) in caps.iter().enumerate() {
            out.extend(cap.arcs.iter().cloned());
            let next = caps[(k + 1) % caps.len()];
            if cap.tangency[1].dist(&next.tangency[0]) > T::lit(1e-9) {
                out.push(Arc::ccw(c.clone(), cap.tangency[1].clone(), next.tangency[0].clone()));
            }
        }
        out
    }

    /// Random points of the domain: `n` from the incircle and `n` from each cap.
    pub fn sample(&self, n: usize, rng: &mut SphereRng) -> Vec<UnitVector<T>> {
        let (c, rin) = (self.center(), self.inradius());
        let mut out: Vec<UnitVector<T>> = (0..n).map(|_| crate::sampling::random_in_cap(c, rin, rng)).collect();
        for cap in &self.caps {
            out.extend((0..n).map(|_| cap.sample_point(c, rin, self.radius, rng)));
        }
        out
    }

    /// Largest depth by which sampled points of one cap lie inside another.
    pub fn max_cap_overlap(&self, n: usize, rng: &mut SphereRng) -> T {
        let (c, rin) = (self.center(), self.inradius());
        let mut worst = T::zero();
        for (i, a) in self.caps.iter().enumerate() {
            let mut pts: Vec<UnitVector<T>> = (0..n).map(|_| a.sample_point(c, rin, self.radius, rng)).collect();
            pts.extend(a.arcs.iter().flat_map(|arc| arc.sample(64)));
            for (j, b) in self.caps.iter().enumerate() {
                if i == j {
                    continue;
                }
                for p in &pts {
                    worst = worst.max(cap_depth(b, c, rin, self.radius, p));
                }
            }
        }
        worst
    }
}

/// How far `y` lies inside `cap` (non-positive when outside or on the boundary).
fn cap_depth<T: Scalar>(cap: &Cap<T>, c: &UnitVector<T>, rin: T, r: T, y: &UnitVector<T>) -> T {
    let lo = angle_from(c, &cap.apex, &cap.tangency[0]);
    let hi = angle_from(c, &cap.apex, &cap.tangency[1]);
    let a = angle_from(c, &cap.apex, y);
    let radial = c.dist(y) - rin;
    let arcs = cap.arc_centers.iter().map(|z| r - z.dist(y)).fold(T::infinity(), T::min);
    radial.min(arcs).min(a - lo).min(hi - a)
}

/// Cap domain of kind `C` over the incircle `B[c, rin]` with the given apexes.
pub fn cap_domain_from_apexes<T: Scalar>(c: &UnitVector<T>, rin: T, r: T, apexes: &[UnitVector<T>], kind: CapKind) -> Result<CapDomain<T>> {
    let caps = apexes
        .iter()
        .map(|q| Cap::new(c, rin, r, q.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CapDomain {
        radius: r,
        incircle: BallSpec { center: c.clone(), radius: rin },
        caps,
        kind,
    })
}

/// The threefold symmetric cap domain `C*` with incircle radius `rin`, centred
/// on the north pole, whose apexes lie at distance `r - rin` from the centre
/// along the vertex directions of `Delta_2(r)`.
pub fn build_symmetric_cap_domain<T: Scalar>(rin: T, r: T) -> Result<CapDomain<T>> {
    let simplex = SimplexBody::new(2, r)?;
    let lowest = simplex.inradius();
    if !(rin >= lowest - T::geo_tol() && rin < r * T::half()) {
        return Err(GeomError::Input(format!(
            "incircle radius {rin} outside [{lowest}, {})",
            r * T::half()
        )));
    }
    let c = simplex.center();
    let apexes: Vec<UnitVector<T>> = simplex
        .vertices
        .iter()
        .map(|b| c.toward(b, r - rin).expect("vertex is not the centre"))
        .collect();
    cap_domain_from_apexes(&c, rin, r, &apexes, CapKind::Symmetric)
}

/// Radial extent from `c` of `B[centers, r]` in the tangent direction at angle `theta`.
pub(crate) fn radial_reach<T: Scalar>(c: &UnitVector<T>, e1: &[T; 3], e2: &[T; 3], theta: T, centers: &[UnitVector<T>], r: T) -> T {
    let dir: Vec<T> = (0..3).map(|k| theta.cos() * e1[k] + theta.sin() * e2[k]).collect();
    crate::sphere::ray_exit(c, &dir, centers, r).0
}

/// Areas of `A \ B` and `B \ A` for a domain `A = B[generators, r]` and a cap domain `B`
/// sharing the centre `c`, by integrating `1 - cos(radius)` over directions.
pub fn symmetric_differences<T: Scalar>(a: &ArcBoundary<T>, b: &CapDomain<T>, n: usize) -> (T, T) {
    let c = b.center();
    let (e1, e2) = frame_toward(c, &b.caps[0].apex);
    let rin = b.inradius();
    let r = b.radius;
    let cap_ranges: Vec<(T, T, &Cap<T>)> = b
        .caps
        .iter()
        .map(|cap| {
            let ang = |y: &UnitVector<T>| dot(y.coords(), &e2).atan2(dot(y.coords(), &e1));
            (ang(&cap.tangency[0]), ang(&cap.tangency[1]), cap)
        })
        .collect();
    let two_pi = T::two() * T::PI();
    let h = two_pi / T::lit(n as f64);
    let (mut a_minus_b, mut b_minus_a) = (T::zero(), T::zero());
    for k in 0..n {
        let theta = (T::lit(k as f64) + T::half()) * h - T::PI();
        let ra = radial_reach(c, &e1, &e2, theta, &a.generators, a.radius);
        let mut rb = rin;
        for (lo, hi, cap) in &cap_ranges {
            let mut t = theta;
            while t < *lo {
                t = t + two_pi;
            }
            let mut top = *hi;
            while top < *lo {
                top = top + two_pi;
            }
            if t <= top {
                rb = rb.max(radial_reach(c, &e1, &e2, theta, &cap.arc_centers, r));
            }
        }
        let diff = rb.cos() - ra.cos();
        if diff > T::zero() {
            a_minus_b = a_minus_b + diff * h;
        } else {
            b_minus_a = b_minus_a - diff * h;
        }
    }
    (a_minus_b, b_minus_a)
}
