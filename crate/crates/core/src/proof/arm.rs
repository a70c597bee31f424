//! Clearance of a point moving along a radius-`r` arc from the disk `B[b3, r]`.
//!
//! Configuration: `Delta_2(r)` with vertices `b1, b2, b3` about the centre `c`,
//! an incircle radius `rin` between the inradius of `Delta_2(r)` and `r / 2`,
//! the point `c1` at distance `r - rin` from `c` towards `b1`, the point `b3*`
//! at distance `rin` from `c` away from `b3`, and the radius-`r` circle about
//! `c'` through `c1` and `b3*` that has `b3` inside and `b1` outside. `f` is
//! where that circle crosses the boundary arc from `b1` to the midpoint `b12`
//! of the arc `b1 b2`, and `v` is the point of the circle farthest from `b3`.

use serde::{Deserialize, Serialize};

use crate::disk::{circle_pair_intersections, Arc};
use crate::error::{GeomError, Result};
use crate::simplex::SimplexBody;
use crate::sphere::UnitVector;
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ArmPoint<T: Scalar> {
    /// Arc length from `f` along the circle about `c'`.
    pub position: T,
    /// `dist(b3, x) - r`.
    pub clearance: T,
    /// Distance from `x` to the nearest point of `B[b3, r]` on the segment `b3 x`.
    pub gap: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ArmProfile<T: Scalar> {
    pub radius: T,
    pub inradius: T,
    pub b3: UnitVector<T>,
    pub arc_center: UnitVector<T>,
    pub f: UnitVector<T>,
    pub v: UnitVector<T>,
    pub points: Vec<ArmPoint<T>>,
    /// Smallest increase of the clearance between consecutive samples.
    pub min_step: T,
}

impl<T: Scalar> ArmProfile<T> {
    pub fn strictly_increasing(&self) -> bool {
        self.min_step > T::zero()
    }
}

/// Profile at the incircle radius halfway between the inradius of `Delta_2(r)` and `r / 2`.
pub fn cauchy_arm_profile<T: Scalar>(r: T, samples: usize) -> Result<ArmProfile<T>> {
    let rin = (SimplexBody::<T>::new(2, r)?.inradius() + r * T::half()) * T::half();
    cauchy_arm_profile_at(r, rin, samples)
}

pub fn cauchy_arm_profile_at<T: Scalar>(r: T, rin: T, samples: usize) -> Result<ArmProfile<T>> {
    if samples < 2 {
        return Err(GeomError::Input("an arm profile needs at least two samples".into()));
    }
    let simplex = SimplexBody::<T>::new(2, r)?;
    let lowest = simplex.inradius();
    if !(rin > lowest && rin < r * T::half()) {
        return Err(GeomError::Input(format!("incircle radius {rin} outside ({lowest}, {})", r * T::half())));
    }
    let c = simplex.center();
    let [b1, _, b3] = [&simplex.vertices[0], &simplex.vertices[1], &simplex.vertices[2]];
    let c1 = c.toward(b1, r - rin).expect("vertex differs from centre");
    let away = c.tangent_toward(b3).expect("vertex differs from centre");
    let b3_star = c.walk(&away.iter().map(|&v| -v).collect::<Vec<_>>(), rin);
    let b12 = b3.toward(&c, r).expect("vertex differs from centre");

    let cands = circle_pair_intersections(&c1, r, &b3_star, r)
        .ok_or_else(|| GeomError::Degenerate("no radius-r circle through c1 and b3*".into()))?;
    let arc_center = cands
        .into_iter()
        .find(|z| z.dist(b3) < r && z.dist(b1) > r)
        .ok_or_else(|| GeomError::Degenerate("no admissible centre c'".into()))?;

    let crossings = circle_pair_intersections(b3, r, &arc_center, r)
        .ok_or_else(|| GeomError::Degenerate("circles about b3 and c' do not meet".into()))?;
    let detour = |p: &UnitVector<T>| p.dist(b1) + p.dist(&b12);
    let f = if detour(&crossings[0]) <= detour(&crossings[1]) { crossings[0].clone() } else { crossings[1].clone() };
    let out = arc_center.tangent_toward(b3).expect("c' differs from b3");
    let v = arc_center.walk(&out.iter().map(|&x| -x).collect::<Vec<_>>(), r);

    let fwd = Arc::ccw(arc_center.clone(), f.clone(), v.clone());
    let back = Arc::ccw(arc_center.clone(), v.clone(), f.clone());
    let (arc, reversed) = if fwd.span <= back.span { (fwd, false) } else { (back, true) };
    let mut points = Vec::with_capacity(samples);
    for k in 0..samples {
        let s = T::lit(k as f64 / (samples - 1) as f64);
        let x = arc.point_at(if reversed { T::one() - s } else { s });
        let clearance = b3.dist(&x) - r;
        let gap = match b3.toward(&x, r) {
            Some(y) if clearance > T::zero() => x.dist(&y),
            _ => T::zero(),
        };
        points.push(ArmPoint {
            position: s * arc.length(),
            clearance,
            gap,
        });
    }
    let min_step = points
        .windows(2)
        .map(|w| w[1].clearance - w[0].clearance)
        .fold(T::infinity(), T::min);
    Ok(ArmProfile {
        radius: r,
        inradius: rin,
        b3: b3.clone(),
        arc_center,
        f,
        v,
        points,
        min_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn profile_increases_and_matches_gap() {
        for r in [0.3, 0.7, FRAC_PI_2] {
            let p = cauchy_arm_profile::<f64>(r, 100).unwrap();
            assert!(p.strictly_increasing(), "r={r}: {}", p.min_step);
            assert!(p.points[0].clearance.abs() < 1e-12);
            for pt in &p.points {
                assert!((pt.gap - pt.clearance.max(0.0)).abs() < 1e-12);
            }
        }
    }
}
