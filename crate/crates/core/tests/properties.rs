use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use wideball::disk::boundary_structure;
use wideball::minimax::circumradius_minimax;
use wideball::sampling::{random_in_cap, random_point, random_rotation, random_tangent, rng_for, sample_wide_generator};
use wideball::{dual_membership, GeneratorSet, UnitVector};

fn radius() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.3), Just(0.7), Just(FRAC_PI_2), 0.1f64..FRAC_PI_2]
}

fn brute_dist(a: &UnitVector<f64>, b: &UnitVector<f64>) -> f64 {
    let d: f64 = a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    2.0 * (d / 2.0).min(1.0).asin()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_a_metric(d in 2usize..6, seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let [a, b, c]: [UnitVector<f64>; 3] = std::array::from_fn(|_| random_point(d, &mut rng));
        prop_assert!((a.dist(&b) - b.dist(&a)).abs() <= 1e-12);
        prop_assert!(a.dist(&c) <= a.dist(&b) + b.dist(&c) + 1e-12);
        prop_assert!((a.dist(&b) - brute_dist(&a, &b)).abs() <= 1e-12);
        prop_assert!(a.dist(&a) == 0.0);
    }

    #[test]
    fn generators_lie_in_their_dual(d in 2usize..5, r in radius(), n in 1usize..12, seed in any::<u64>()) {
        let x = sample_wide_generator::<f64>(d, r, n, seed);
        for p in x.points() {
            prop_assert!(dual_membership(p, &x).unwrap());
        }
    }

    #[test]
    fn dual_is_antitone_and_union_is_intersection(d in 2usize..5, r in radius(), seed in any::<u64>()) {
        let x = sample_wide_generator::<f64>(d, r, 8, seed);
        let pts = x.points();
        let k = pts.len().div_ceil(2);
        let small = GeneratorSet::new(d, r, pts[..k].to_vec()).unwrap();
        let rest = if k < pts.len() { Some(GeneratorSet::new(d, r, pts[k..].to_vec()).unwrap()) } else { None };
        let center = circumradius_minimax(pts).unwrap().center;
        let mut rng = rng_for(seed, 9);
        for _ in 0..200 {
            let y = random_in_cap(&center, r + 0.3, &mut rng);
            let in_x = dual_membership(&y, &x).unwrap();
            let in_small = dual_membership(&y, &small).unwrap();
            prop_assert!(!in_x || in_small);
            if let Some(rest) = &rest {
                prop_assert_eq!(in_x, in_small && dual_membership(&y, rest).unwrap());
            }
        }
    }

    #[test]
    fn chebyshev_center_is_locally_optimal(d in 2usize..5, r in radius(), seed in any::<u64>()) {
        let x = sample_wide_generator::<f64>(d, r, 7, seed);
        let ball = circumradius_minimax(x.points()).unwrap();
        let far = |c: &UnitVector<f64>| x.points().iter().map(|p| p.dist(c)).fold(0.0, f64::max);
        let mut rng = rng_for(seed, 3);
        for _ in 0..20 {
            let t = random_tangent(&ball.center, &mut rng);
            let moved = ball.center.walk(&t, 1e-4);
            prop_assert!(far(&moved) >= ball.radius - 1e-8);
        }
    }

    #[test]
    fn area_is_rotation_invariant(r in radius(), n in 1usize..10, seed in any::<u64>()) {
        let x = sample_wide_generator::<f64>(2, r, n, seed);
        let m = random_rotation::<f64, _>(3, &mut rng_for(seed, 4));
        let a = boundary_structure(&x).unwrap();
        let b = boundary_structure(&x.transformed(&m)).unwrap();
        prop_assert!((a.area() - b.area()).abs() <= 1e-10);
        prop_assert_eq!(a.arcs.len(), b.arcs.len());
    }

    #[test]
    fn boundary_arcs_are_carried_by_generators(r in radius(), n in 1usize..12, seed in any::<u64>()) {
        let x = sample_wide_generator::<f64>(2, r, n, seed);
        let b = boundary_structure(&x).unwrap();
        let m = b.generators.len();
        prop_assert!(b.vertices().len() <= (m * (m - 1)).max(1));
        for arc in &b.arcs {
            prop_assert!(x.points().iter().any(|p| p.dist(&arc.center) <= 1e-9));
            prop_assert!((arc.radius() - r).abs() <= 1e-9);
        }
        prop_assert!(b.area() > 0.0 && b.area() <= 2.0 * PI + 1e-12);
    }

    #[test]
    fn supporting_balls_contain_the_domain(r in radius(), n in 2usize..10, seed in any::<u64>()) {
        let x = sample_wide_generator::<f64>(2, r, n, seed);
        let b = boundary_structure(&x).unwrap();
        prop_assume!(b.arcs.len() >= 2);
        let mut rng = rng_for(seed, 6);
        let inside: Vec<UnitVector<f64>> = (0..300)
            .map(|_| random_in_cap(&b.center, r, &mut rng))
            .filter(|y| b.contains(y, 0.0))
            .collect();
        for (k, arc) in b.arcs.iter().enumerate() {
            let next = &b.arcs[(k + 1) % b.arcs.len()];
            let v = &arc.to;
            let into_a = v.tangent_toward(&arc.center).unwrap();
            let into_b = v.tangent_toward(&next.center).unwrap();
            for s in [0.0, 0.3, 0.7, 1.0] {
                let dir: Vec<f64> = into_a.iter().zip(&into_b).map(|(p, q)| (1.0 - s) * p + s * q).collect();
                let z = v.walk(&dir, r);
                for y in &inside {
                    prop_assert!(z.dist(y) <= r + 1e-9);
                }
            }
        }
    }
}
