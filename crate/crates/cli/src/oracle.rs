//! Brute-force estimates of area and width used to cross-check the exact routines.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wideball::minimax::circumradius_minimax;
use wideball::sampling::rng_for;
use wideball::{GeneratorSet, GeomError, Result, UnitVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    Grid,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub quantity: String,
    pub value: f64,
    pub error_bound: f64,
    pub method: OracleMethod,
    /// Sample count for Monte-Carlo, final grid spacing in radians for grids.
    pub resolution: f64,
}

pub const MC_STREAMS: usize = 16;

type V3 = [f64; 3];

fn dot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &V3, b: &V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit(v: V3) -> V3 {
    let n = dot(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn v3(p: &UnitVector<f64>) -> V3 {
    let c = p.coords();
    [c[0], c[1], c[2]]
}

/// Orthonormal `(e1, e2)` with `e1 x e2 = p`.
fn frame(p: &V3) -> (V3, V3) {
    let helper = if p[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = unit(cross(&helper, p));
    let e1 = [-e1[0], -e1[1], -e1[2]];
    let e2 = cross(p, &e1);
    (e1, e2)
}

fn polar(p: &V3, e1: &V3, e2: &V3, theta: f64, phi: f64) -> V3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    std::array::from_fn(|k| ct * p[k] + st * (cp * e1[k] + sp * e2[k]))
}

struct Disk {
    gens: Vec<V3>,
    cos_r: f64,
    r: f64,
    center: V3,
}

impl Disk {
    fn new(x: &GeneratorSet<f64>) -> Result<Self> {
        if x.dim() != 2 {
            return Err(GeomError::Input(format!("oracle needs a generator set on S^2, got S^{}", x.dim())));
        }
        let center = v3(&circumradius_minimax(x.points())?.center);
        Ok(Self {
            gens: x.points().iter().map(v3).collect(),
            cos_r: x.radius().cos(),
            r: x.radius(),
            center,
        })
    }

    fn contains(&self, y: &V3) -> bool {
        self.gens.iter().all(|g| dot(g, y) >= self.cos_r)
    }
}

/// Hit-or-miss area of `B[X, r]` on `S^2` from `n` uniform samples in the cap
/// `B[c, r]` about the Chebyshev centre. The cap is sampled with Archimedes'
/// projection (uniform height). The bound is three standard errors.
pub fn oracle_area_mc(x: &GeneratorSet<f64>, n: usize, seed: u64) -> Result<OracleResult> {
    oracle_area_mc_sigma(x, n, seed, 3.0)
}

/// As [`oracle_area_mc`] with the bound set to `sigmas` standard errors.
pub fn oracle_area_mc_sigma(x: &GeneratorSet<f64>, n: usize, seed: u64, sigmas: f64) -> Result<OracleResult> {
    if n < 1000 {
        return Err(GeomError::Input(format!("Monte-Carlo oracle needs at least 1000 samples, got {n}")));
    }
    let disk = Disk::new(x)?;
    let (e1, e2) = frame(&disk.center);
    let lo = disk.r.cos();
    let cap = 2.0 * PI * (1.0 - lo);
    let hits: usize = (0..MC_STREAMS)
        .into_par_iter()
        .map(|s| {
            let count = n / MC_STREAMS + usize::from(s < n % MC_STREAMS);
            let mut rng = rng_for(seed, 1000 + s as u64);
            (0..count)
                .filter(|_| {
                    let z = lo + (1.0 - lo) * rng.random::<f64>();
                    let phi = 2.0 * PI * rng.random::<f64>();
                    disk.contains(&polar(&disk.center, &e1, &e2, z.clamp(-1.0, 1.0).acos(), phi))
                })
                .count()
        })
        .sum();
    let p = hits as f64 / n as f64;
    let se = cap * (p * (1.0 - p) / n as f64).sqrt();
    Ok(OracleResult {
        quantity: "area".into(),
        value: cap * p,
        error_bound: (sigmas * se).max(cap / n as f64),
        method: OracleMethod::MonteCarlo,
        resolution: n as f64,
    })
}

/// Boundary of the disk: `m` radial exits from the centre found by bisection,
/// plus every pairwise circle intersection that lies in the disk.
fn boundary_points(disk: &Disk, m: usize) -> Vec<V3> {
    let (e1, e2) = frame(&disk.center);
    let mut pts: Vec<V3> = (0..m)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / m as f64;
            let (mut lo, mut hi) = (0.0, disk.r + 1e-9);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if disk.contains(&polar(&disk.center, &e1, &e2, mid, phi)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            polar(&disk.center, &e1, &e2, lo, phi)
        })
        .collect();
    let relaxed = Disk {
        gens: disk.gens.clone(),
        cos_r: disk.cos_r - 1e-12,
        r: disk.r,
        center: disk.center,
    };
    for (i, a) in disk.gens.iter().enumerate() {
        for b in &disk.gens[i + 1..] {
            let g = dot(a, b);
            let n = cross(a, b);
            let nn = dot(&n, &n);
            if nn < 1e-24 {
                continue;
            }
            let alpha = disk.cos_r / (1.0 + g);
            let h = 1.0 - 2.0 * alpha * alpha * (1.0 + g);
            if h < 0.0 {
                continue;
            }
            let beta = (h / nn).sqrt();
            for s in [-1.0, 1.0] {
                let y = unit(std::array::from_fn(|k| alpha * (a[k] + b[k]) + s * beta * n[k]));
                if relaxed.contains(&y) {
                    pts.push(y);
                }
            }
        }
    }
    pts
}

/// Boundary point of the feasible-centre set along the ray from `c` at angle
/// `phi`: the first `t` where some `<cos t c + sin t e, y>` turns negative.
fn polar_exit(c: &V3, e1: &V3, e2: &V3, phi: f64, boundary: &[V3]) -> V3 {
    let (sp, cp) = phi.sin_cos();
    let e: V3 = std::array::from_fn(|k| cp * e1[k] + sp * e2[k]);
    let t = boundary
        .iter()
        .map(|y| dot(c, y).atan2(-dot(&e, y)))
        .fold(std::f64::consts::FRAC_PI_2, f64::min)
        .max(0.0);
    let (st, ct) = t.sin_cos();
    std::array::from_fn(|k| ct * c[k] + st * e[k])
}

fn dist(a: &V3, b: &V3) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

/// Indices of the farthest pair, by inner product.
fn farthest_pair(a: &[V3], b: &[V3]) -> (usize, usize) {
    let mut best = (f64::INFINITY, 0, 0);
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            let g = dot(p, q);
            if g < best.0 {
                best = (g, i, j);
            }
        }
    }
    (best.1, best.2)
}

/// Width of `B[X, r]` on `S^2` as `pi` minus the diameter of the set of
/// feasible lune centres (hemisphere poles `u` with `<u, y> >= 0` on the
/// boundary). The centre set is star-shaped about the mean generator; its
/// boundary is sampled along `n_dirs` rays and all `n_dirs x n_dirs` pairs
/// are compared, then three nested angular grids refine the best pair. Any
/// optimal pair has samples within half the largest sample spacing `h` of its
/// ends, so the bound is `h` plus the slack of sampling the disk boundary.
pub fn oracle_width_grid(x: &GeneratorSet<f64>, n_dirs: usize) -> Result<OracleResult> {
    let disk = Disk::new(x)?;
    let n_dirs = n_dirs.max(8);
    let m = 2880;
    let boundary = boundary_points(&disk, m);
    let spacing = 2.0 * PI * disk.r.sin() / m as f64;
    let slack = spacing * spacing / 4.0;
    let sum = disk.gens.iter().fold([0.0; 3], |a, g| [a[0] + g[0], a[1] + g[1], a[2] + g[2]]);
    let c = unit(sum);
    let (e1, e2) = frame(&c);
    let at = |phi: f64| polar_exit(&c, &e1, &e2, phi, &boundary);

    let dphi = 2.0 * PI / n_dirs as f64;
    let coarse: Vec<V3> = (0..n_dirs).into_par_iter().map(|i| at(i as f64 * dphi)).collect();
    let h = (0..n_dirs)
        .map(|i| dist(&coarse[i], &coarse[(i + 1) % n_dirs]))
        .fold(0.0, f64::max);
    let (i, j) = farthest_pair(&coarse, &coarse);
    let (mut pu, mut pv) = (i as f64 * dphi, j as f64 * dphi);
    let (mut u, mut v) = (coarse[i], coarse[j]);
    let mut step = dphi;
    let k = 20;
    for _ in 0..3 {
        let fine = step / 10.0;
        let angles = |p: f64| (-k..=k).map(move |s| p + s as f64 * fine).collect::<Vec<_>>();
        let (au, av) = (angles(pu), angles(pv));
        let su: Vec<V3> = au.iter().map(|&p| at(p)).collect();
        let sv: Vec<V3> = av.iter().map(|&p| at(p)).collect();
        let (a, b) = farthest_pair(&su, &sv);
        if dot(&su[a], &sv[b]) < dot(&u, &v) {
            (u, v, pu, pv) = (su[a], sv[b], au[a], av[b]);
        }
        step = fine;
    }
    Ok(OracleResult {
        quantity: "width".into(),
        value: PI - dist(&u, &v),
        error_bound: h + slack + 1e-9,
        method: OracleMethod::Grid,
        resolution: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;
    use wideball::simplex::reuleaux_triangle;

    fn cap(r: f64) -> GeneratorSet<f64> {
        GeneratorSet::new(2, r, vec![UnitVector::new(vec![0.3, -0.2, 0.9]).unwrap()]).unwrap()
    }

    #[test]
    fn mc_area_of_reuleaux_and_cap() {
        let x = reuleaux_triangle::<f64>(FRAC_PI_2).unwrap();
        let o = oracle_area_mc(&x, 1_000_000, 1).unwrap();
        assert!((o.value - FRAC_PI_2).abs() <= o.error_bound, "{o:?}");
        let o = oracle_area_mc(&cap(0.5), 200_000, 2).unwrap();
        assert!((o.value - 2.0 * PI * (1.0 - 0.5f64.cos())).abs() <= o.error_bound);
        assert!(oracle_area_mc(&cap(0.5), 999, 2).is_err());
    }

    #[test]
    fn grid_width_of_reuleaux_and_cap() {
        for r in [0.3, 0.7, FRAC_PI_2] {
            let o = oracle_width_grid(&reuleaux_triangle::<f64>(r).unwrap(), 720).unwrap();
            assert!((o.value - r).abs() <= o.error_bound, "r={r}: {o:?}");
            assert!((o.value - r).abs() <= 1e-6, "r={r}: {o:?}");
        }
        for r in [0.3, 0.7] {
            let o = oracle_width_grid(&cap(r), 720).unwrap();
            assert!((o.value - 2.0 * r).abs() <= o.error_bound, "r={r}: {o:?}");
        }
        let o = oracle_width_grid(&cap(FRAC_PI_2), 720).unwrap();
        assert!((o.value - PI).abs() <= o.error_bound);
    }

    #[test]
    fn oracles_reject_higher_dimensions() {
        let x = GeneratorSet::new(3, 0.5, vec![UnitVector::basis(3, 0)]).unwrap();
        assert!(oracle_area_mc(&x, 5000, 0).is_err());
        assert!(oracle_width_grid(&x, 20).is_err());
    }
}
