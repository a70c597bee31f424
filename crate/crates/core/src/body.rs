//! Wide ball bodies `K = B[X, r]` in `S^d` of any dimension: inradius,
//! `r`-hull, width and Monte-Carlo volume.
//!
//! The `r`-hull `(X^r)^r = B[K, r]` and the polar body `K° = B[K, pi/2]` are
//! both intersections of congruent balls centred on `K`, and the width of `K`
//! is `pi - diam(K°)`. Their diameters are estimated the same way: `K` is
//! replaced by a finite sample `S` of its boundary (giving an outer
//! approximation `B[S, rho]`), a diametral pair of the outer body is located
//! by ray shooting and local search, and each endpoint is then checked against
//! the true `K` by a farthest-point query. Endpoints that fail add their
//! farthest point to `S` and the search repeats.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::generators::GeneratorSet;
use crate::measure::cap_volume;
use crate::minimax::circumradius_minimax;
use crate::sampling::{random_in_cap, random_tangent, rng_for, SphereRng};
use crate::sphere::{diameter_pair, ray_exit, Lune, UnitVector};
use crate::vector::{axpy, norm, reject, scale};
use crate::Scalar;

/// Inradius of `B[X, r]` with its centre: `r - circumradius(X)` at the Chebyshev centre of `X`.
pub fn inradius_nd<T: Scalar>(x: &GeneratorSet<T>) -> Result<(T, UnitVector<T>)> {
    let c = circumradius_minimax(x.points())?;
    Ok((x.radius() - c.radius, c.center))
}

/// Intersection of the balls `B[centers, radius]` seen from an interior point.
pub(crate) struct Balls<'a, T: Scalar> {
    pub centers: &'a [UnitVector<T>],
    pub radius: T,
    pub inner: UnitVector<T>,
    basis: Vec<Vec<T>>,
}

impl<'a, T: Scalar> Balls<'a, T> {
    pub fn new(centers: &'a [UnitVector<T>], radius: T, inner: UnitVector<T>) -> Self {
        let basis = inner.tangent_basis();
        Self { centers, radius, inner, basis }
    }

    pub fn contains(&self, y: &UnitVector<T>, tol: T) -> bool {
        let c = (self.radius + tol).cos();
        self.centers.iter().all(|x| x.dot(y) >= c || x.dist(y) <= self.radius + tol)
    }

    /// Boundary point hit by the ray from `inner` along the unit tangent `dir`.
    pub fn exit(&self, dir: &[T]) -> UnitVector<T> {
        let dir = self.tangent(dir);
        let (t, _) = ray_exit(&self.inner, &dir, self.centers, self.radius);
        self.inner.walk(&dir, t)
    }

    /// Unit projection of `v` onto the tangent space at `inner`.
    fn tangent(&self, v: &[T]) -> Vec<T> {
        let t = reject(v, self.inner.coords());
        let n = norm(&t);
        if n > T::lit(1e-12) {
            scale(T::one() / n, &t)
        } else {
            self.basis[0].clone()
        }
    }

    fn nudge(&self, dir: &[T], delta: &[T], step: T) -> Option<Vec<T>> {
        let mut v = dir.to_vec();
        axpy(&mut v, step, delta);
        let n = norm(&v);
        (n > T::lit(1e-12)).then(|| self.tangent(&v))
    }

    /// Pattern search over ray directions maximizing `f` of the exit point,
    /// starting with step `step`.
    pub fn climb(&self, f: &impl Fn(&UnitVector<T>) -> T, start: Vec<T>, mut step: T, rng: &mut SphereRng) -> (T, Vec<T>) {
        let mut dir = start;
        let mut best = f(&self.exit(&dir));
        let mut evals = 0;
        while step > T::lit(1e-8) && evals < 2000 {
            let mut improved = false;
            let random = random_tangent(&self.inner, rng);
            'outer: for m in self.basis.iter().chain(std::iter::once(&random)) {
                for sign in [T::one(), -T::one()] {
                    let Some(cand) = self.nudge(&dir, &scale(sign, m), step) else { continue };
                    evals += 1;
                    let val = f(&self.exit(&cand));
                    if val > best {
                        best = val;
                        dir = cand;
                        improved = true;
                        break 'outer;
                    }
                }
            }
            if improved {
                step = step * T::lit(1.5);
            } else {
                step = step * T::half();
            }
        }
        (best, dir)
    }

    /// Farthest point of the body from `p`, with the ray direction reaching it.
    /// Starts from `hints`, the direction towards `-p` and `n_random` random
    /// directions, and refines the best `n_climb` of them.
    pub fn farthest_from(
        &self,
        p: &UnitVector<T>,
        hints: &[Vec<T>],
        n_random: usize,
        n_climb: usize,
        rng: &mut SphereRng,
    ) -> (T, UnitVector<T>, Vec<T>) {
        let anti = p.antipode();
        if self.contains(&anti, T::zero()) {
            let dir = self.inner.tangent_toward(&anti).unwrap_or_else(|| self.basis[0].clone());
            return (T::PI(), anti, dir);
        }
        let f = |y: &UnitVector<T>| p.dist(y);
        let mut starts: Vec<Vec<T>> = hints.to_vec();
        if let Some(t) = self.inner.tangent_toward(&anti) {
            starts.push(t);
        }
        for _ in 0..n_random {
            starts.push(random_tangent(&self.inner, rng));
        }
        let mut scored: Vec<(T, Vec<T>)> = starts.into_iter().map(|d| (f(&self.exit(&d)), d)).collect();
        scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let mut best: Option<(T, Vec<T>)> = None;
        for (_, d) in scored.into_iter().take(n_climb.max(1)) {
            let (v, d) = self.climb(&f, d, T::lit(0.05), rng);
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, d));
            }
        }
        let (v, d) = best.expect("at least one start");
        (v, self.exit(&d), d)
    }
}

/// Result of the diameter search on `B[K, rho]`.
struct DualDiameter<T: Scalar> {
    value: T,
    pair: [UnitVector<T>; 2],
    support: Vec<UnitVector<T>>,
    cuts: usize,
    verified: bool,
    residual: T,
    gap: T,
}

const MAX_ROUNDS: usize = 12;
/// Endpoints of the outer approximation farther than this outside `B[K, rho]` are cut off.
pub const CUT_TOL: f64 = 1e-6;
/// The search also stops once the outer diameter is within this of the known pair.
pub const GAP_TOL: f64 = 2e-4;

/// Diameter of `B[K, rho]`, `K = B[X, r]`. `known` is a pair already known to
/// lie in `B[K, rho]`; the search starts from it and never returns less. The
/// result is verified when the outer pair passes the farthest-point check or
/// the outer diameter comes within `GAP_TOL` of the known pair; otherwise the
/// known pair is returned unverified.
fn dual_diameter<T: Scalar>(
    x: &GeneratorSet<T>,
    rho: T,
    known: [UnitVector<T>; 2],
    n_support: usize,
    seed: u64,
) -> Result<DualDiameter<T>> {
    let c = circumradius_minimax(x.points())?.center;
    let body = Balls::new(x.points(), x.radius(), c.clone());
    let mut rng = rng_for(seed, 2);
    let mut support: Vec<UnitVector<T>> = x.points().to_vec();
    support.push(c.clone());
    for _ in 0..n_support {
        let d = random_tangent(&c, &mut rng);
        support.push(body.exit(&d));
    }
    let cut_tol = T::lit(CUT_TOL);
    let n_rays = 64 * x.dim();
    let toward = |p: &UnitVector<T>| c.tangent_toward(p).unwrap_or_else(|| random_tangent(&c, &mut rng_for(seed, 4)));
    let mut starts: Vec<(Vec<T>, Vec<T>)> = vec![(toward(&known[0]), toward(&known[1]))];
    let mut cuts = 0;
    let mut found = None;
    let mut residual = T::zero();
    let known_value = known[0].dist(&known[1]);
    let mut upper = T::PI();
    let mut bracketed = false;
    for round in 0..MAX_ROUNDS {
        let outer = Balls::new(&support, rho, c.clone());
        if round == 0 {
            let rays: Vec<(Vec<T>, UnitVector<T>)> = (0..n_rays)
                .map(|_| {
                    let d = random_tangent(&c, &mut rng);
                    let p = outer.exit(&d);
                    (d, p)
                })
                .collect();
            let mut best = (T::infinity(), 0, 0);
            for i in 0..rays.len() {
                for j in i + 1..rays.len() {
                    let g = rays[i].1.dot(&rays[j].1);
                    if g < best.0 {
                        best = (g, i, j);
                    }
                }
            }
            starts.push((rays[best.1].0.clone(), rays[best.2].0.clone()));
        }
        let mut best: Option<(T, Vec<T>, Vec<T>)> = None;
        for (dp, dq) in &starts {
            let (mut dp, mut dq) = (dp.clone(), dq.clone());
            let mut val = outer.exit(&dp).dist(&outer.exit(&dq));
            for _ in 0..8 {
                let p = outer.exit(&dp);
                let (v1, _, nq) = outer.farthest_from(&p, std::slice::from_ref(&dq), 0, 1, &mut rng);
                let q = outer.exit(&nq);
                let (v2, _, np) = outer.farthest_from(&q, std::slice::from_ref(&dp), 0, 1, &mut rng);
                dq = nq;
                dp = np;
                let v = v1.max(v2);
                let done = v <= val + T::lit(1e-13);
                val = val.max(v);
                if done {
                    break;
                }
            }
            let val = outer.exit(&dp).dist(&outer.exit(&dq));
            if best.as_ref().is_none_or(|(bv, _, _)| val > *bv) {
                best = Some((val, dp, dq));
            }
        }
        let (val, dp, dq) = best.expect("diameter search has starts");
        let pair = [outer.exit(&dp), outer.exit(&dq)];
        let mut cut = false;
        residual = T::neg_infinity();
        for e in &pair {
            let (dist, y, _) = body.farthest_from(e, &[], 6, 3, &mut rng);
            residual = residual.max(dist - rho);
            if dist > rho + cut_tol {
                support.push(y);
                cuts += 1;
                cut = true;
            }
        }
        starts = vec![(dp, dq)];
        upper = val;
        if !cut {
            found = Some((val, pair));
            break;
        }
        if val <= known_value + T::lit(GAP_TOL) {
            bracketed = true;
            break;
        }
    }
    let verified = found.is_some() || bracketed;
    let (value, pair, residual) = match found {
        Some((v, p)) if v > known_value => (v, p, residual.max(T::zero())),
        _ => (known_value, known, T::zero()),
    };
    let gap = (upper - value).max(T::zero());
    Ok(DualDiameter { value, pair, support, cuts, verified, residual, gap })
}

/// Diametral pair of the generators extended outwards by `ext` on their great circle.
fn extended_diametral_pair<T: Scalar>(x: &GeneratorSet<T>, ext: T) -> [UnitVector<T>; 2] {
    let (_, i, j) = diameter_pair(x.points()).expect("generator sets are nonempty");
    let (a, b) = (&x.points()[i], &x.points()[j]);
    match (a.tangent_toward(b), b.tangent_toward(a)) {
        (Some(ta), Some(tb)) if ext > T::zero() => [a.walk(&scale(-T::one(), &ta), ext), b.walk(&scale(-T::one(), &tb), ext)],
        _ => [a.clone(), b.clone()],
    }
}

/// Finite description of the `r`-hull `(X^r)^r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RHull<T: Scalar> {
    pub radius: T,
    /// Points of `X^r` (generators, Chebyshev centre, boundary samples and
    /// cutting points); the hull is approximated from outside by `B[points, radius]`.
    pub points: Vec<UnitVector<T>>,
    /// Diameter of the hull, attained by `diameter_pair`.
    pub diameter: T,
    pub diameter_pair: [UnitVector<T>; 2],
    /// `true` when both endpoints passed the exact farthest-point check or `gap <= GAP_TOL`.
    pub verified: bool,
    /// How far the endpoints may lie outside the hull (at most `CUT_TOL` when verified).
    pub residual: T,
    /// Diameter of the final outer approximation minus `diameter`.
    pub gap: T,
    pub cuts: usize,
    pub n_support: usize,
    pub seed: u64,
}

impl<T: Scalar> RHull<T> {
    pub fn contains(&self, y: &UnitVector<T>, tol: T) -> bool {
        self.points.iter().all(|p| p.dist(y) <= self.radius + tol)
    }
}

/// Outer approximation of `(X^r)^r` from `n_support` boundary samples of `X^r`, with its diameter.
pub fn r_hull<T: Scalar>(x: &GeneratorSet<T>, n_support: usize, seed: u64) -> Result<RHull<T>> {
    let dd = dual_diameter(x, x.radius(), extended_diametral_pair(x, T::zero()), n_support, seed)?;
    Ok(RHull {
        radius: x.radius(),
        points: dd.support,
        diameter: dd.value,
        diameter_pair: dd.pair,
        verified: dd.verified,
        residual: dd.residual,
        gap: dd.gap,
        cuts: dd.cuts,
        n_support,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct WidthEstimate<T: Scalar> {
    pub value: T,
    /// Lune containing the body with width `value`; `None` for a hemisphere.
    pub witness: Option<Lune<T>>,
    /// `value >= r - 1e-6`, the lower bound every wide `r`-ball body satisfies.
    pub certified_lower: bool,
    /// `true` when both lune centres passed the exact farthest-point check or `gap <= GAP_TOL`.
    pub verified: bool,
    /// How far the lune centres may lie outside the polar body (at most `CUT_TOL` when verified).
    pub residual: T,
    /// `value` minus the width implied by the final outer approximation.
    pub gap: T,
    pub cuts: usize,
    pub budget: usize,
    pub seed: u64,
}

/// Width of `B[X, r]` as `pi - diam(K°)`. The witness lune contains the body up to
/// `residual`, so `value` bounds the true width from above up to the same amount.
pub fn width_nd<T: Scalar>(x: &GeneratorSet<T>, budget: usize, seed: u64) -> Result<WidthEstimate<T>> {
    let s = (T::FRAC_PI_2() - x.radius()).max(T::zero());
    let dd = dual_diameter(x, T::FRAC_PI_2(), extended_diametral_pair(x, s), budget, seed)?;
    let [u, v] = dd.pair;
    let witness = Lune::new(u, v).ok();
    let value = T::PI() - dd.value;
    Ok(WidthEstimate {
        value,
        witness,
        certified_lower: value >= x.radius() - T::lit(1e-6),
        verified: dd.verified,
        residual: dd.residual,
        gap: dd.gap,
        cuts: dd.cuts,
        budget,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
    /// Number of independent random streams the samples were split over.
    pub streams: usize,
}

pub const VOLUME_STREAMS: usize = 16;

/// Hit-or-miss volume of `B[X, r]` from `n` uniform samples in the cap
/// `B[c, r]`, `c` the Chebyshev centre of `X`, which contains the body.
pub fn mc_volume<T: Scalar>(x: &GeneratorSet<T>, n: usize, seed: u64) -> Result<VolumeEstimate> {
    if n < 100 {
        return Err(GeomError::Input(format!("at least 100 samples required, got {n}")));
    }
    let c = circumradius_minimax(x.points())?.center;
    let r = x.radius();
    let hits: usize = (0..VOLUME_STREAMS)
        .into_par_iter()
        .map(|k| {
            let m = n / VOLUME_STREAMS + usize::from(k < n % VOLUME_STREAMS);
            let mut rng = rng_for(seed, 100 + k as u64);
            (0..m)
                .filter(|_| x.contains_dual(&random_in_cap(&c, r, &mut rng), T::zero()))
                .count()
        })
        .sum();
    let cap = cap_volume::<f64>(x.dim(), r.as_f64());
    let p = hits as f64 / n as f64;
    Ok(VolumeEstimate {
        mean: cap * p,
        std_error: cap * (p * (1.0 - p) / n as f64).sqrt(),
        n_samples: n,
        seed,
        streams: VOLUME_STREAMS,
    })
}

/// Largest violation `dist(y, x) - r` over the generators (negative inside).
pub fn dual_slack<T: Scalar>(x: &GeneratorSet<T>, y: &UnitVector<T>) -> T {
    x.points()
        .iter()
        .map(|p| p.dist(y) - x.radius())
        .fold(T::neg_infinity(), T::max)
}

/// Boundary points of `B[X, r]` hit by `n` random rays from the Chebyshev centre.
pub fn boundary_samples<T: Scalar>(x: &GeneratorSet<T>, n: usize, seed: u64) -> Result<Vec<UnitVector<T>>> {
    let c = circumradius_minimax(x.points())?.center;
    let body = Balls::new(x.points(), x.radius(), c.clone());
    let mut rng = rng_for(seed, 3);
    Ok((0..n).map(|_| body.exit(&random_tangent(&c, &mut rng))).collect())
}
