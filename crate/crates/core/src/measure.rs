//! Closed-form spherical measures.

use crate::Scalar;

/// `Gamma(k / 2)` for a positive integer `k`, via the half-integer recurrence.
pub fn gamma_half<T: Scalar>(k: u32) -> T {
    assert!(k > 0);
    // Gamma(1) = 1, Gamma(1/2) = sqrt(pi), Gamma(x + 1) = x Gamma(x).
    let (mut g, mut cur) = if k.is_multiple_of(2) { (T::one(), 2) } else { (T::PI().sqrt(), 1) };
    while cur < k {
        g = g * T::lit(cur as f64 / 2.0);
        cur += 2;
    }
    g
}

/// Surface measure of the unit sphere `S^d`: `2 pi^{(d+1)/2} / Gamma((d+1)/2)`.
pub fn sphere_volume<T: Scalar>(d: usize) -> T {
    let k = (d + 1) as u32;
    T::two() * T::PI().powf(T::lit(k as f64 / 2.0)) / gamma_half::<T>(k)
}

/// Volume `omega_n` of the unit ball in `E^n`: `pi^{n/2} / Gamma(n/2 + 1)`.
pub fn unit_ball_volume<T: Scalar>(n: usize) -> T {
    T::PI().powf(T::lit(n as f64 / 2.0)) / gamma_half::<T>(n as u32 + 2)
}

/// `int_0^t sin^n(s) ds` by the reduction formula.
pub fn sin_power_integral<T: Scalar>(n: usize, t: T) -> T {
    match n {
        0 => t,
        1 => T::one() - t.cos(),
        _ => {
            let nf = T::lit(n as f64);
            -t.sin().powi(n as i32 - 1) * t.cos() / nf
                + (nf - T::one()) / nf * sin_power_integral(n - 2, t)
        }
    }
}

/// Measure of the cap `B[x, radius]` on `S^d`, `vol(S^{d-1}) * int_0^radius sin^{d-1}`.
pub fn cap_volume<T: Scalar>(d: usize, radius: T) -> T {
    sphere_volume::<T>(d - 1) * sin_power_integral(d - 1, radius)
}

/// Volume of the wide ball body over a regular simplex with edge `pi/2`:
/// an orthant of `S^d`, `(d+1) omega_{d+1} / 2^{d+1}`.
pub fn orthant_simplex_volume<T: Scalar>(d: usize) -> T {
    T::lit((d + 1) as f64) * unit_ball_volume::<T>(d + 1) / T::two().powi(d as i32 + 1)
}

/// Schramm's lower bound for the minimum volume of a body of constant width
/// `pi/2` in `S^d` (`d >= 3`), returned with the reference volume of the
/// simplex body it is compared against.
pub fn schramm_bound<T: Scalar>(d: usize) -> (T, T) {
    assert!(d >= 3, "the bound is stated for d >= 3");
    let df = T::lit(d as f64);
    let reference = orthant_simplex_volume::<T>(d);
    let factor = (T::lit(8.0).powi(d as i32)
        / (T::two() * T::PI() * (df + T::one()) * (df + T::lit(4.0)).powi(d as i32)))
    .sqrt();
    (factor * reference, reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half::<f64>(1) - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half::<f64>(2), 1.0);
        assert!((gamma_half::<f64>(5) - 0.75 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(gamma_half::<f64>(8), 6.0);
    }

    #[test]
    fn sphere_volumes() {
        assert!((sphere_volume::<f64>(1) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_volume::<f64>(2) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_volume::<f64>(3) - 2.0 * PI * PI).abs() < 1e-13);
        // (d+1) omega_{d+1} = vol(S^d)
        for d in 2..10 {
            let a = (d as f64 + 1.0) * unit_ball_volume::<f64>(d + 1);
            assert!((a - sphere_volume::<f64>(d)).abs() < 1e-12 * a);
        }
    }

    #[test]
    fn cap_volumes() {
        assert!((cap_volume::<f64>(2, 0.5) - 2.0 * PI * (1.0 - 0.5f64.cos())).abs() < 1e-14);
        assert!((cap_volume::<f64>(3, PI) - 2.0 * PI * PI).abs() < 1e-12);
        for d in 2..8 {
            let h = cap_volume::<f64>(d, PI / 2.0);
            assert!((2.0 * h - sphere_volume::<f64>(d)).abs() < 1e-12);
        }
    }

    #[test]
    fn orthant_volumes() {
        assert!((orthant_simplex_volume::<f64>(2) - PI / 2.0).abs() < 1e-14);
        assert!((orthant_simplex_volume::<f64>(3) - PI * PI / 8.0).abs() < 1e-14);
    }
}
