//! Regular spherical simplices, Reuleaux generators and the spherical Jung radius.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::generators::GeneratorSet;
use crate::sphere::{check_radius, UnitVector};
use crate::vector::dot;
use crate::Scalar;

/// Circumradius of a regular spherical `d`-simplex with edge `r`:
/// `arccos sqrt((1 + d cos r) / (d + 1))`. Every set of diameter at most `r`
/// in `S^d` fits in a ball of this radius.
pub fn jung_circumradius<T: Scalar>(d: usize, r: T) -> T {
    let df = T::lit(d as f64);
    ((T::one() + df * r.cos()) / (df + T::one())).sqrt().acos_clamped()
}

/// Vertices of a regular spherical `d`-simplex with edge `radius`, centred on
/// the north pole. `B[vertices, radius]` is the body usually written `Delta_d(r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SimplexBody<T: Scalar> {
    pub dim: usize,
    pub radius: T,
    pub vertices: Vec<UnitVector<T>>,
}

impl<T: Scalar> SimplexBody<T> {
    pub fn new(dim: usize, radius: T) -> Result<Self> {
        if dim < 2 {
            return Err(GeomError::DimensionTooSmall(dim));
        }
        check_radius(radius)?;
        let n = dim + 1;
        let nf = T::lit(n as f64);
        let df = T::lit(dim as f64);
        let axial = ((T::one() + df * radius.cos()) / nf).sqrt();
        let radial = (T::one() - axial * axial).max(T::zero()).sqrt();
        // Centred standard simplex directions e_i - 1/n, all orthogonal to (1, ..., 1).
        let w_norm = ((nf - T::one()) / nf).sqrt();
        let axis = T::one() / nf.sqrt();
        // Householder reflection sending (1, ..., 1)/sqrt(n) to the north pole.
        let mut q = vec![axis; n];
        q[n - 1] = q[n - 1] - T::one();
        let qq = dot(&q, &q);
        let reflect = |v: Vec<T>| -> Vec<T> {
            let k = T::two() * dot(&q, &v) / qq;
            v.iter().zip(&q).map(|(&a, &b)| a - k * b).collect()
        };
        let vertices = (0..n)
            .map(|i| {
                let v: Vec<T> = (0..n)
                    .map(|j| {
                        let w = if i == j { T::one() - T::one() / nf } else { -T::one() / nf };
                        axial * axis + radial * w / w_norm
                    })
                    .collect();
                UnitVector::normalized(reflect(v))
            })
            .collect();
        Ok(Self { dim, radius, vertices })
    }

    pub fn generators(&self) -> GeneratorSet<T> {
        GeneratorSet::new(self.dim, self.radius, self.vertices.clone())
            .expect("regular simplex with edge r is wide")
    }

    /// Common distance from the centre (north pole) to the vertices.
    pub fn circumradius(&self) -> T {
        jung_circumradius(self.dim, self.radius)
    }

    /// Inradius of `Delta_d(r)`: `r - circumradius`.
    pub fn inradius(&self) -> T {
        self.radius - self.circumradius()
    }

    pub fn center(&self) -> UnitVector<T> {
        UnitVector::north_pole(self.dim)
    }
}

/// Generators of the spherical Reuleaux triangle `Delta_2(r)`.
pub fn reuleaux_triangle<T: Scalar>(r: T) -> Result<GeneratorSet<T>> {
    Ok(SimplexBody::new(2, r)?.generators())
}

/// Generators of the regular spherical Reuleaux `n`-gon of width `r` (odd `n >= 3`),
/// centred on the north pole of `S^2`.
pub fn reuleaux_polygon<T: Scalar>(n: usize, r: T) -> Result<GeneratorSet<T>> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(GeomError::Input(format!("Reuleaux polygons need an odd vertex count >= 3, got {n}")));
    }
    check_radius(r)?;
    let nf = T::lit(n as f64);
    let sep = T::PI() * (nf - T::one()) / nf;
    let s2 = (T::one() - r.cos()) / (T::one() - sep.cos());
    let rho = s2.sqrt().asin_clamped();
    let pts = (0..n)
        .map(|k| {
            let a = T::two() * T::PI() * T::lit(k as f64) / nf;
            UnitVector::normalized(vec![rho.sin() * a.cos(), rho.sin() * a.sin(), rho.cos()])
        })
        .collect();
    // Long diagonals equal r up to rounding; rescale validation through the tolerant constructor.
    GeneratorSet::new(2, r, pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::diameter;
    use std::f64::consts::FRAC_PI_2;

    /// Gram-matrix oracle: every off-diagonal entry of a regular simplex with
    /// edge `r` equals `cos r`.
    fn gram_is_regular(v: &[UnitVector<f64>], r: f64) -> bool {
        v.iter().enumerate().all(|(i, a)| {
            v.iter()
                .enumerate()
                .all(|(j, b)| i == j || (a.dot(b) - r.cos()).abs() < 1e-13)
        })
    }

    #[test]
    fn simplex_edges_equal_r() {
        for d in 2..=8 {
            for &r in &[0.2, 0.8, FRAC_PI_2] {
                let s = SimplexBody::<f64>::new(d, r).unwrap();
                assert_eq!(s.vertices.len(), d + 1);
                assert!(gram_is_regular(&s.vertices, r), "d={d} r={r}");
                assert!((diameter(&s.vertices).unwrap() - r).abs() < 1e-12);
                let c = s.center();
                for v in &s.vertices {
                    assert!((c.dist(v) - s.circumradius()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn jung_radius_values() {
        assert!((jung_circumradius::<f64>(2, FRAC_PI_2) - (1.0_f64 / 3.0).sqrt().acos()).abs() < 1e-15);
        assert!((jung_circumradius::<f64>(2, FRAC_PI_2) - 0.955_316_618_124_509_3).abs() < 1e-12);
        for &r in &[0.1, 0.7, FRAC_PI_2] {
            let mut prev = 0.0;
            for d in 2..=10 {
                let j = jung_circumradius::<f64>(d, r);
                assert!(j > prev);
                assert!(j < r);
                prev = j;
            }
        }
    }

    #[test]
    fn reuleaux_at_right_angle_is_orthonormal() {
        let g = reuleaux_triangle::<f64>(FRAC_PI_2).unwrap();
        let p = g.points();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(p[i].dot(&p[j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn reuleaux_polygon_has_width_diagonals() {
        for n in [3usize, 5, 7] {
            let g = reuleaux_polygon::<f64>(n, 0.6).unwrap();
            assert!((diameter(g.points()).unwrap() - 0.6).abs() < 1e-12);
        }
        assert!(reuleaux_polygon::<f64>(4, 0.6).is_err());
    }
}
