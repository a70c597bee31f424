//! Seeded random sampling on `S^d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::generators::GeneratorSet;
use crate::simplex::jung_circumradius;
use crate::sphere::UnitVector;
use crate::vector::{norm, reject, scale};
use crate::Scalar;

pub type SphereRng = ChaCha8Rng;

/// Independent generator for `stream` under a common `seed`.
pub fn rng_for(seed: u64, stream: u64) -> SphereRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_vec<T: Scalar, R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<T> {
    (0..len)
        .map(|_| T::lit(rng.sample::<f64, _>(StandardNormal)))
        .collect()
}

/// Uniform point on `S^d` (normalized standard Gaussian).
pub fn random_point<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> UnitVector<T> {
    loop {
        if let Some(u) = UnitVector::try_normalized(gaussian_vec(d + 1, rng)) {
            return u;
        }
    }
}

/// Uniform unit tangent vector at `at`.
pub fn random_tangent<T: Scalar, R: Rng + ?Sized>(at: &UnitVector<T>, rng: &mut R) -> Vec<T> {
    loop {
        let g = gaussian_vec::<T, _>(at.dim() + 1, rng);
        let t = reject(&g, at.coords());
        let n = norm(&t);
        if n > T::lit(1e-8) {
            return scale(T::one() / n, &t);
        }
    }
}

/// Uniform point in the cap `B[center, radius]` of `S^d`.
///
/// The polar angle has density proportional to `sin^{d-1}`; it is drawn exactly
/// on `S^2` and by rejection against the maximum of the density otherwise.
pub fn random_in_cap<T: Scalar, R: Rng + ?Sized>(center: &UnitVector<T>, radius: T, rng: &mut R) -> UnitVector<T> {
    let d = center.dim();
    let radius = radius.min(T::PI());
    let theta = if d == 2 {
        let lo = radius.cos();
        let z = lo + (T::one() - lo) * T::lit(rng.random::<f64>());
        z.acos_clamped()
    } else {
        let peak = if radius >= T::FRAC_PI_2() { T::one() } else { radius.sin() };
        loop {
            let th = radius * T::lit(rng.random::<f64>());
            let accept = (th.sin() / peak).powi(d as i32 - 1);
            if T::lit(rng.random::<f64>()) <= accept {
                break th;
            }
        }
    };
    let dir = random_tangent(center, rng);
    center.walk(&dir, theta)
}

/// Haar-random orthogonal matrix of size `n x n`, row-major (Gram-Schmidt on a Gaussian matrix).
pub fn random_rotation<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<T> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v = gaussian_vec::<T, _>(n, rng);
        for b in &rows {
            v = reject(&v, b);
        }
        let len = norm(&v);
        if len > T::lit(1e-6) {
            rows.push(scale(T::one() / len, &v));
        }
    }
    rows.concat()
}

/// `n` i.i.d. uniform points of `S^d`, deterministic in `seed`.
pub fn sample_uniform<T: Scalar>(d: usize, n: usize, seed: u64) -> Vec<UnitVector<T>> {
    assert!(d >= 2, "sphere dimension must be at least 2");
    let mut rng = rng_for(seed, 0);
    (0..n).map(|_| random_point(d, &mut rng)).collect()
}

/// Random wide generator set: candidates are drawn in the Jung cap around a
/// random pole and kept only while the diameter stays at most `r`.
/// The first candidate is always accepted, so the result is never empty.
pub fn sample_wide_generator<T: Scalar>(d: usize, r: T, n_points: usize, seed: u64) -> GeneratorSet<T> {
    let mut rng = rng_for(seed, 1);
    let pole: UnitVector<T> = random_point(d, &mut rng);
    let cap = jung_circumradius::<T>(d, r);
    let mut pts: Vec<UnitVector<T>> = Vec::with_capacity(n_points);
    let budget = 200 * n_points.max(1);
    for _ in 0..budget {
        if pts.len() >= n_points.max(1) {
            break;
        }
        let cand = random_in_cap(&pole, cap, &mut rng);
        // strict margin so the stored set passes validation after rounding
        if pts.iter().all(|p| p.dist(&cand) <= r - T::lit(4.0) * T::alg_tol()) {
            pts.push(cand);
        }
    }
    GeneratorSet::new(d, r, pts).expect("construction keeps the diameter below r")
}
