//! Minimal lune width of a wide `r`-disk domain through its polar body.
//!
//! A lune `H(u) ∩ H(v)` contains `D` exactly when `u` and `v` lie in the polar
//! body `D° = {u : <u, y> >= 0 for all y in D}`, and its width is
//! `pi - dist(u, v)`. So `width(D) = pi - diam(D°)`. The boundary of `D°` is
//! again a closed curve of circular arcs: every arc of `D` on `S(x, r)`
//! becomes an arc of `S(x, pi/2 - r)` with the same central angle, and every
//! corner of `D` becomes a great-circle arc whose length is the exterior angle.

use serde::{Deserialize, Serialize};

use super::arc::{circle_point, frame_toward, Arc};
use super::ArcBoundary;
use crate::error::{GeomError, Result};
use crate::generators::GeneratorSet;
use crate::sphere::{Lune, UnitVector};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct WidthResult<T: Scalar> {
    pub value: T,
    /// A lune of width `value` containing the domain. `None` only for a
    /// hemisphere, which lies in no lune.
    pub witness: Option<Lune<T>>,
}

fn polar_point<T: Scalar>(x: &UnitVector<T>, y: &UnitVector<T>, s: T) -> UnitVector<T> {
    match x.tangent_toward(y) {
        Some(t) if s > T::zero() => {
            let away: Vec<T> = t.iter().map(|&v| -v).collect();
            x.walk(&away, s)
        }
        _ => x.clone(),
    }
}

/// Boundary of the polar body of `boundary` as arcs (possibly of zero radius at `r = pi/2`).
pub fn polar_curve<T: Scalar>(boundary: &ArcBoundary<T>) -> Vec<Arc<T>> {
    let s = (T::FRAC_PI_2() - boundary.radius).max(T::zero());
    let n = boundary.arcs.len();
    let mut out = Vec::with_capacity(2 * n);
    for (k, a) in boundary.arcs.iter().enumerate() {
        out.push(Arc {
            center: a.center.clone(),
            from: polar_point(&a.center, &a.from, s),
            to: polar_point(&a.center, &a.to, s),
            span: a.span,
        });
        let next = &boundary.arcs[(k + 1) % n];
        let p = polar_point(&a.center, &a.to, s);
        let q = polar_point(&next.center, &a.to, s);
        if n > 1 && p.dist(&q) > T::alg_tol() {
            let fwd = Arc::ccw(a.to.clone(), p.clone(), q.clone());
            out.push(if fwd.span <= T::PI() { fwd } else { Arc::ccw(a.to.clone(), q, p) });
        }
    }
    out
}

struct Piece<'a, T: Scalar> {
    arc: &'a Arc<T>,
    rho: T,
    e1: [T; 3],
    e2: [T; 3],
}

impl<T: Scalar> Piece<'_, T> {
    fn at(&self, phi: T) -> UnitVector<T> {
        circle_point(&self.arc.center, self.rho, &self.e1, &self.e2, phi)
    }
}

/// Minimizes `f` on `[lo, hi]` by golden-section search, returning `(argmin, min)`.
pub(crate) fn golden_min<T: Scalar>(mut lo: T, mut hi: T, f: impl Fn(T) -> T) -> (T, T) {
    let g = T::lit(0.618_033_988_749_894_9);
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..200 {
        if hi - lo <= T::lit(1e-13) {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    if fa < fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Minimal spherical width of `B[X, r]` on `S^2` with a witnessing lune.
pub fn width_2d<T: Scalar>(x: &GeneratorSet<T>) -> Result<WidthResult<T>> {
    let boundary = super::boundary_structure(x)?;
    width_of_boundary(&boundary)
}

pub(crate) fn width_of_boundary<T: Scalar>(boundary: &ArcBoundary<T>) -> Result<WidthResult<T>> {
    let curve = polar_curve(boundary);
    let pieces: Vec<Piece<T>> = curve
        .iter()
        .map(|arc| {
            let (e1, e2) = frame_toward(&arc.center, &arc.from);
            Piece { arc, rho: arc.radius(), e1, e2 }
        })
        .collect();
    const SAMPLES: usize = 48;

    // smallest <u, v> over pairs of polar boundary points
    let mut best = (T::infinity(), 0usize, T::zero(), 0usize, T::zero());
    for (ia, a) in pieces.iter().enumerate() {
        let steps = if a.arc.span > T::zero() && a.rho > T::zero() { SAMPLES } else { 0 };
        for (ib, b) in pieces.iter().enumerate() {
            let h = |phi: T| b.arc.min_dot(a.at(phi).coords());
            let grid: Vec<(T, T)> = (0..=steps)
                .map(|k| {
                    let phi = if steps == 0 { T::zero() } else { a.arc.span * T::lit(k as f64 / steps as f64) };
                    (phi, h(phi))
                })
                .collect();
            for k in 0..grid.len() {
                let left = if k > 0 { grid[k - 1].1 } else { T::infinity() };
                let right = if k + 1 < grid.len() { grid[k + 1].1 } else { T::infinity() };
                if grid[k].1 > left || grid[k].1 > right {
                    continue;
                }
                let (phi, val) = if steps == 0 {
                    grid[k]
                } else {
                    let lo = grid[k.saturating_sub(1)].0;
                    let hi = grid[(k + 1).min(steps)].0;
                    let refined = golden_min(lo, hi, h);
                    if refined.1 < grid[k].1 { refined } else { grid[k] }
                };
                if val < best.0 {
                    let v_angle = b.arc.min_dot_at(a.at(phi).coords()).1;
                    best = (val, ia, phi, ib, v_angle);
                }
            }
        }
    }
    let (val, ia, phi, ib, psi) = best;
    if !val.is_finite() {
        return Err(GeomError::Structure("empty polar curve".into()));
    }
    let u = pieces[ia].at(phi);
    let v = pieces[ib].at(psi);
    let witness = Lune::new(u.clone(), v.clone()).ok();
    let value = match &witness {
        Some(l) => l.width(),
        None => T::PI() - u.dist(&v),
    };
    Ok(WidthResult { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::boundary_structure;
    use crate::sampling::sample_wide_generator;
    use crate::simplex::{reuleaux_polygon, reuleaux_triangle};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn cap_width_is_twice_radius() {
        for r in [0.2, 0.7, 1.3] {
            let g = GeneratorSet::new(2, r, vec![UnitVector::new(vec![0.1_f64, -0.4, 1.0]).unwrap()]).unwrap();
            let w = width_2d(&g).unwrap();
            assert!((w.value - 2.0 * r).abs() < 1e-12, "r={r}: {}", w.value);
        }
        let hemi = GeneratorSet::new(2, FRAC_PI_2, vec![UnitVector::north_pole(2)]).unwrap();
        let w = width_2d(&hemi).unwrap();
        assert!((w.value - PI).abs() < 1e-12);
        assert!(w.witness.is_none());
    }

    #[test]
    fn constant_width_bodies() {
        for r in [0.3, 0.7, FRAC_PI_2] {
            let w = width_2d(&reuleaux_triangle::<f64>(r).unwrap()).unwrap();
            assert!((w.value - r).abs() < 1e-12, "r={r}: {}", w.value);
            let w5 = width_2d(&reuleaux_polygon::<f64>(5, r).unwrap()).unwrap();
            assert!((w5.value - r).abs() < 1e-10, "pentagon r={r}: {}", w5.value);
        }
    }

    #[test]
    fn witness_contains_domain_and_touches_it() {
        for seed in 0..20 {
            let r = [0.3, 0.7, 1.1, FRAC_PI_2][seed as usize % 4];
            let g = sample_wide_generator::<f64>(2, r, 6, seed);
            let b = boundary_structure(&g).unwrap();
            let w = width_of_boundary(&b).unwrap();
            assert!(w.value >= r - 1e-9, "seed {seed}: {} < {r}", w.value);
            let lune = w.witness.unwrap();
            for p in b.sample_boundary(2000) {
                assert!(lune.contains(&p, 1e-9));
            }
            // both face centres of a width-attaining lune belong to the body
            let (f1, f2) = lune.face_centers();
            assert!(b.contains(&f1, 1e-6) && b.contains(&f2, 1e-6), "seed {seed}");
        }
    }
}
