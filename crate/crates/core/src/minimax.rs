//! Smallest enclosing cap (Chebyshev centre) of a point set on `S^d`.
//!
//! For points in an open hemisphere the optimal cap is dual to the point of
//! the Euclidean convex hull `conv(X)` nearest the origin: if `p` is that point
//! then the centre is `p / |p|` and `cos R = |p|`. The nearest point is found
//! with Wolfe's finite active-set method, which terminates with the exact
//! support set (the farthest points) instead of an iterate that only
//! converges sublinearly.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::sphere::UnitVector;
use crate::vector::{axpy, dot, norm, solve_dense};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Circumball<T: Scalar> {
    pub radius: T,
    pub center: UnitVector<T>,
    /// Indices of the points on the boundary of the cap with their convex
    /// weights; the centre is the normalized weighted sum.
    pub support: Vec<(usize, T)>,
}

/// Nearest point of the convex hull of `points` to the origin, with the convex
/// weights of the final affinely independent support set.
pub fn min_norm_point<T: Scalar>(points: &[&[T]]) -> (Vec<T>, Vec<(usize, T)>) {
    assert!(!points.is_empty());
    let n = points.len();
    let scale2 = points.iter().map(|p| dot(p, p)).fold(T::zero(), T::max);
    let stop = T::lit(1e-15).max(T::epsilon() * T::lit(8.0)) * scale2;
    let tiny = T::lit(1e-14).max(T::epsilon() * T::lit(16.0));

    let first = (0..n)
        .min_by(|&a, &b| dot(points[a], points[a]).partial_cmp(&dot(points[b], points[b])).unwrap())
        .unwrap();
    let mut set = vec![first];
    let mut w = vec![T::one()];
    let mut x = points[first].to_vec();

    for _major in 0..(50 * n + 100) {
        let xx = dot(&x, &x);
        let (k, xk) = (0..n)
            .map(|i| (i, dot(&x, points[i])))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if xx - xk <= stop || set.contains(&k) {
            break;
        }
        set.push(k);
        w.push(T::zero());

        for _minor in 0..(set.len() + 2) {
            let Some(alpha) = affine_min(points, &set) else {
                // affinely dependent support: drop the newest point and stop improving
                set.pop();
                w.pop();
                return finish(points, set, w);
            };
            if alpha.iter().all(|&a| a > tiny) {
                w = alpha;
                break;
            }
            let mut theta = T::one();
            for (&wi, &ai) in w.iter().zip(&alpha) {
                if ai <= tiny {
                    let den = wi - ai;
                    if den > T::zero() {
                        theta = theta.min(wi / den);
                    }
                }
            }
            for (wi, &ai) in w.iter_mut().zip(&alpha) {
                *wi = theta * ai + (T::one() - theta) * *wi;
            }
            let mut keep_set = Vec::with_capacity(set.len());
            let mut keep_w = Vec::with_capacity(set.len());
            let min_idx = w
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .map(|(i, _)| i)
                .unwrap();
            for (i, (&s, &wi)) in set.iter().zip(&w).enumerate() {
                if wi > tiny && i != min_idx {
                    keep_set.push(s);
                    keep_w.push(wi);
                }
            }
            let total: T = keep_w.iter().copied().sum();
            set = keep_set;
            w = keep_w.into_iter().map(|v| v / total).collect();
            if set.is_empty() {
                set = vec![k];
                w = vec![T::one()];
            }
        }
        x = combine(points, &set, &w);
    }
    finish(points, set, w)
}

fn finish<T: Scalar>(points: &[&[T]], set: Vec<usize>, w: Vec<T>) -> (Vec<T>, Vec<(usize, T)>) {
    let x = combine(points, &set, &w);
    (x, set.into_iter().zip(w).collect())
}

fn combine<T: Scalar>(points: &[&[T]], set: &[usize], w: &[T]) -> Vec<T> {
    let mut x = vec![T::zero(); points[set[0]].len()];
    for (&s, &wi) in set.iter().zip(w) {
        axpy(&mut x, wi, points[s]);
    }
    x
}

/// Minimizer of `|sum a_i s_i|` subject to `sum a_i = 1` over the points in `set`.
fn affine_min<T: Scalar>(points: &[&[T]], set: &[usize]) -> Option<Vec<T>> {
    let k = set.len();
    let m = k + 1;
    let mut a = vec![T::zero(); m * m];
    for i in 0..k {
        for j in 0..k {
            a[i * m + j] = dot(points[set[i]], points[set[j]]);
        }
        a[i * m + k] = T::one();
        a[k * m + i] = T::one();
    }
    let mut b = vec![T::zero(); m];
    b[k] = T::one();
    let sol = solve_dense(a, b, m, T::lit(1e-13).max(T::epsilon() * T::lit(64.0)))?;
    Some(sol[..k].to_vec())
}

/// Smallest cap containing `points`: returns its radius, centre and support.
///
/// Errors when the points are not in an open hemisphere (the origin lies in
/// their Euclidean convex hull).
pub fn circumradius_minimax<T: Scalar>(points: &[UnitVector<T>]) -> Result<Circumball<T>> {
    let first = points.first().ok_or(GeomError::Empty)?;
    if let Some(p) = points.iter().find(|p| p.dim() != first.dim()) {
        return Err(GeomError::DimensionMismatch {
            expected: first.dim() + 1,
            found: p.dim() + 1,
        });
    }
    if points.len() == 1 {
        return Ok(Circumball {
            radius: T::zero(),
            center: first.clone(),
            support: vec![(0, T::one())],
        });
    }
    let slices: Vec<&[T]> = points.iter().map(|p| p.coords()).collect();
    let (x, support) = min_norm_point(&slices);
    if norm(&x) <= T::lit(1e-12).max(T::epsilon() * T::lit(100.0)) {
        return Err(GeomError::NotInOpenHemisphere);
    }
    let center = UnitVector::normalized(x);
    let radius = points.iter().map(|p| center.dist(p)).fold(T::zero(), T::max);
    Ok(Circumball { radius, center, support })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_point, random_tangent, rng_for, sample_wide_generator};
    use crate::simplex::SimplexBody;

    #[test]
    fn singleton_and_pair() {
        let x = UnitVector::new(vec![0.0_f64, 0.0, 1.0]).unwrap();
        let c = circumradius_minimax(std::slice::from_ref(&x)).unwrap();
        assert_eq!(c.radius, 0.0);
        assert_eq!(c.center, x);
        let y = x.toward(&UnitVector::new(vec![1.0, 1.0, 0.0]).unwrap(), 0.5).unwrap();
        let c = circumradius_minimax(&[x.clone(), y.clone()]).unwrap();
        assert!((c.radius - 0.25).abs() < 1e-14);
        let mid = x.midpoint(&y).unwrap();
        assert!(c.center.dist(&mid) < 1e-12);
    }

    #[test]
    fn simplex_vertices_give_normalized_centroid_radius() {
        for d in 2..=6 {
            for &r in &[0.3, 1.0, std::f64::consts::FRAC_PI_2] {
                let s = SimplexBody::<f64>::new(d, r).unwrap();
                let c = circumradius_minimax(&s.vertices).unwrap();
                let df = d as f64;
                let expect = ((1.0 + df * r.cos()) / (df + 1.0)).sqrt().acos();
                assert!((c.radius - expect).abs() < 1e-12, "d={d} r={r}");
                for v in &s.vertices {
                    assert!((c.center.dist(v) - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_points_surrounding_the_origin() {
        let pts: Vec<UnitVector<f64>> = [[1.0, 0.0, 0.0], [-1.0, 0.1, 0.0], [0.0, -1.0, 0.0], [0.0, 1.0, 0.0]]
            .iter()
            .map(|c| UnitVector::new(c.to_vec()).unwrap())
            .collect();
        assert_eq!(circumradius_minimax(&pts), Err(GeomError::NotInOpenHemisphere));
    }

    #[test]
    fn center_is_locally_optimal() {
        let mut rng = rng_for(21, 0);
        for seed in 0..30 {
            let d = 2 + seed as usize % 3;
            let g = sample_wide_generator::<f64>(d, 0.9, 9, seed);
            let c = circumradius_minimax(g.points()).unwrap();
            for _ in 0..20 {
                let t = random_tangent(&c.center, &mut rng);
                let moved = c.center.walk(&t, 1e-4);
                let r2 = g.points().iter().map(|p| moved.dist(p)).fold(0.0, f64::max);
                assert!(r2 >= c.radius - 1e-8, "seed {seed}: {r2} < {}", c.radius);
            }
            // support points are the farthest ones
            for &(i, w) in &c.support {
                assert!(w > 0.0);
                assert!((c.center.dist(&g.points()[i]) - c.radius).abs() < 1e-10);
            }
        }
        let _: UnitVector<f64> = random_point(2, &mut rng);
    }
}
