//! Instance-by-instance replay of the cap-domain argument for
//! `area(B[X, r]) >= area(Delta_2(r))` on `S^2`.
//!
//! For a domain `D` with incircle `B[c, R]`, `2R < r`, whose incircle touches
//! the boundary in three points surrounding `c`, each contact `a` gives a
//! point `q` of `D` at distance at least `r - R` from `c`. The caps over the
//! incircle with apexes `q` form a domain `C` inside `D`; moving the apexes in
//! to distance exactly `r - R` along the axes of `Delta_2(r)` gives `C*`. The
//! replay checks `area(D) >= area(C) >= area(C*) >= area(Delta_2(r))` and the
//! intermediate facts.

mod arm;
mod caps;

pub use arm::{cauchy_arm_profile, cauchy_arm_profile_at, ArmPoint, ArmProfile};
pub use caps::{build_symmetric_cap_domain, cap_domain_from_apexes, symmetric_differences, Cap, CapDomain, CapKind};

use serde::{Deserialize, Serialize};

use crate::disk::{angle_about, boundary_structure, frame_toward, inradius_2d};
use crate::error::{GeomError, Result};
use crate::generators::GeneratorSet;
use crate::sampling::rng_for;
use crate::simplex::SimplexBody;
use crate::sphere::{ray_exit, UnitVector};
use crate::vector::{cross3, scale};
use crate::Scalar;

/// Generators within this distance of the circumradius count as contacts.
const CONTACT_TOL: f64 = 1e-7;
/// Contacts closer than this angle on the incircle are merged.
const CLUSTER_TOL: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub enum Contact<T: Scalar> {
    /// Two contacts at the ends of a diameter of the incircle.
    Diameter { contacts: [UnitVector<T>; 2] },
    /// Three contacts whose triangle has the incircle centre inside.
    Triangle { contacts: [UnitVector<T>; 3] },
}

/// Incircle of `B[X, r]` with its boundary contacts in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Incircle<T: Scalar> {
    pub center: UnitVector<T>,
    pub radius: T,
    pub contacts: Vec<UnitVector<T>>,
}

/// Incircle and its contact points with the boundary of `B[X, r]`.
pub fn incircle_contacts<T: Scalar>(x: &GeneratorSet<T>) -> Result<Incircle<T>> {
    let (rin, c) = inradius_2d(x)?;
    let r = x.radius();
    let rc = r - rin;
    let tol = T::lit(CONTACT_TOL);
    let mut contacts: Vec<UnitVector<T>> = Vec::new();
    for p in x.points() {
        if c.dist(p) < rc - tol {
            continue;
        }
        let Some(t) = c.tangent_toward(p) else { continue };
        let a = c.walk(&scale(-T::one(), &t), rin);
        if contacts.iter().all(|b| b.dist(&a) > T::lit(CLUSTER_TOL) * rin.sin()) {
            contacts.push(a);
        }
    }
    if let Some(first) = contacts.first().cloned() {
        let (e1, e2) = frame_toward(&c, &first);
        contacts.sort_by(|a, b| angle_about(a, &e1, &e2).partial_cmp(&angle_about(b, &e1, &e2)).unwrap());
    }
    Ok(Incircle { center: c, radius: rin, contacts })
}

/// Decides which of the two contact configurations occurs.
///
/// Fails with a precondition error when `2R > r` (beyond `geo_tol`), where the
/// domain already contains a disk of diameter `r`.
pub fn classify_contact<T: Scalar>(x: &GeneratorSet<T>) -> Result<Contact<T>> {
    let inc = incircle_contacts(x)?;
    classify(&inc, x.radius())
}

fn classify<T: Scalar>(inc: &Incircle<T>, r: T) -> Result<Contact<T>> {
    if T::two() * inc.radius > r + T::geo_tol() {
        return Err(GeomError::Precondition(format!(
            "2 R_in = {} exceeds r = {r}; the domain contains a disk of diameter r",
            T::two() * inc.radius
        )));
    }
    let n = inc.contacts.len();
    if n < 2 {
        return Err(GeomError::Degenerate(format!("{n} incircle contacts found")));
    }
    let c = &inc.center;
    let (e1, e2) = frame_toward(c, &inc.contacts[0]);
    let angles: Vec<T> = inc.contacts.iter().map(|a| angle_about(a, &e1, &e2)).collect();
    let two_pi = T::two() * T::PI();
    let tol = T::geo_tol();
    for i in 0..n {
        for j in i + 1..n {
            if ((angles[j] - angles[i]).abs() - T::PI()).abs() <= tol {
                return Ok(Contact::Diameter {
                    contacts: [inc.contacts[i].clone(), inc.contacts[j].clone()],
                });
            }
        }
    }
    // the centre is inside the triangle iff no gap between consecutive contacts reaches pi
    let mut best: Option<(T, [usize; 3])> = None;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut t = [angles[i], angles[j], angles[k]];
                t.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let gap = (t[1] - t[0]).max(t[2] - t[1]).max(two_pi - (t[2] - t[0]));
                if gap < T::PI() - tol && best.as_ref().is_none_or(|(g, _)| gap < *g) {
                    best = Some((gap, [i, j, k]));
                }
            }
        }
    }
    match best {
        Some((_, [i, j, k])) => Ok(Contact::Triangle {
            contacts: [inc.contacts[i].clone(), inc.contacts[j].clone(), inc.contacts[k].clone()],
        }),
        None => Err(GeomError::Degenerate(format!(
            "{n} incircle contacts neither antipodal nor surrounding the centre"
        ))),
    }
}

/// Per-contact data of the construction: the foot `p` at distance `r` from the
/// contact `a`, and the apex `q`, the point of `D` on the great circle through
/// `p` perpendicular to `a p` farthest from the centre.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ApexStep<T: Scalar> {
    pub contact: UnitVector<T>,
    pub foot: UnitVector<T>,
    pub apex: UnitVector<T>,
    pub apex_distance: T,
}

fn apex_step<T: Scalar>(x: &GeneratorSet<T>, c: &UnitVector<T>, a: &UnitVector<T>) -> Result<ApexStep<T>> {
    let r = x.radius();
    let inward = a.tangent_toward(c).ok_or_else(|| GeomError::Degenerate("contact at the centre".into()))?;
    let foot = a.walk(&inward, r);
    let w = cross3(a.coords(), foot.coords());
    let wn = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let w: Vec<T> = w.iter().map(|&v| v / wn).collect();
    let minus = scale(-T::one(), &w);
    let (t_plus, _) = ray_exit(&foot, &w, x.points(), r);
    let (t_minus, _) = ray_exit(&foot, &minus, x.points(), r);
    let apex = if t_plus >= t_minus { foot.walk(&w, t_plus) } else { foot.walk(&minus, t_minus) };
    if !x.contains_dual(&apex, T::geo_tol()) {
        return Err(GeomError::Verification(
            "no point of the domain on the perpendicular great circle".into(),
        ));
    }
    Ok(ApexStep {
        contact: a.clone(),
        foot,
        apex_distance: c.dist(&apex),
        apex,
    })
}

/// The cap domain `C` of a triangle-contact instance with its construction steps.
pub fn build_cap_domain<T: Scalar>(x: &GeneratorSet<T>) -> Result<(CapDomain<T>, Vec<ApexStep<T>>)> {
    let inc = incircle_contacts(x)?;
    match classify(&inc, x.radius())? {
        Contact::Triangle { contacts } => {
            let steps = contacts
                .iter()
                .map(|a| apex_step(x, &inc.center, a))
                .collect::<Result<Vec<_>>>()?;
            let apexes: Vec<UnitVector<T>> = steps.iter().map(|s| s.apex.clone()).collect();
            let domain = cap_domain_from_apexes(&inc.center, inc.radius, x.radius(), &apexes, CapKind::Instance)?;
            Ok((domain, steps))
        }
        Contact::Diameter { .. } => Err(GeomError::Precondition("diameter contact: no cap domain".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `2R >= r`: the domain contains a disk of diameter `r`.
    WideIncircle,
    Diameter,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ProofCheck {
    pub fn at_least(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            tol,
            pass: margin >= -tol,
        }
    }
}

/// Areas along the chain; the set differences come from radial integration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaChain {
    pub domain: f64,
    pub caps: f64,
    pub symmetric_caps: f64,
    pub reuleaux: f64,
    pub reuleaux_minus_symmetric: f64,
    pub symmetric_minus_reuleaux: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub radius: f64,
    pub inradius: f64,
    pub center: Vec<f64>,
    pub branch: Branch,
    pub contacts: Vec<Vec<f64>>,
    pub steps: Vec<ApexStep<f64>>,
    pub area_domain: f64,
    pub area_reuleaux: f64,
    pub chain: Option<AreaChain>,
    pub cap_domain: Option<CapDomain<f64>>,
    pub symmetric_cap_domain: Option<CapDomain<f64>>,
    pub checks: Vec<ProofCheck>,
}

impl ProofTrace {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Sampling effort of the replay's membership checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayOptions {
    pub tol: f64,
    /// Points of `C` tested for membership in `D`.
    pub subset_samples: usize,
    /// Points per cap tested against the other caps.
    pub overlap_samples: usize,
    /// Directions used for the set-difference integrals.
    pub radial_steps: usize,
    pub seed: u64,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            subset_samples: 5000,
            overlap_samples: 1000,
            radial_steps: 20000,
            seed: 0,
        }
    }
}

/// Runs the construction on `x` and records every inequality it relies on.
pub fn replay_proof(x: &GeneratorSet<f64>, opts: &ReplayOptions) -> Result<ProofTrace> {
    let r = x.radius();
    let tol = opts.tol;
    let d = boundary_structure(x)?;
    let area_domain = d.area();
    let reuleaux = boundary_structure(&SimplexBody::new(2, r)?.generators())?.area();
    let inc = incircle_contacts(x)?;
    let mut trace = ProofTrace {
        radius: r,
        inradius: inc.radius,
        center: inc.center.coords().to_vec(),
        branch: Branch::WideIncircle,
        contacts: inc.contacts.iter().map(|a| a.coords().to_vec()).collect(),
        steps: Vec::new(),
        area_domain,
        area_reuleaux: reuleaux,
        chain: None,
        cap_domain: None,
        symmetric_cap_domain: None,
        checks: Vec::new(),
    };
    let contact = match classify(&inc, r) {
        Err(GeomError::Precondition(_)) => None,
        other => Some(other?),
    };
    let contacts = match contact {
        None => {
            trace.checks.push(ProofCheck::at_least("incircle_diameter_ge_r", 2.0 * inc.radius, r, tol));
            trace.checks.push(ProofCheck::at_least("area_d_ge_reuleaux", area_domain, reuleaux, tol));
            return Ok(trace);
        }
        Some(Contact::Diameter { contacts }) => {
            trace.branch = Branch::Diameter;
            trace.contacts = contacts.iter().map(|a| a.coords().to_vec()).collect();
            trace.checks.push(ProofCheck::at_least("area_d_ge_reuleaux", area_domain, reuleaux, tol));
            return Ok(trace);
        }
        Some(Contact::Triangle { contacts }) => contacts,
    };
    trace.branch = Branch::Triangle;
    trace.contacts = contacts.iter().map(|a| a.coords().to_vec()).collect();

    let steps = contacts
        .iter()
        .map(|a| apex_step(x, &inc.center, a))
        .collect::<Result<Vec<_>>>()?;
    for (k, s) in steps.iter().enumerate() {
        trace.checks.push(ProofCheck::at_least(format!("apex_distance_{}", k + 1), s.apex_distance, r - inc.radius, tol));
    }
    let apexes: Vec<UnitVector<f64>> = steps.iter().map(|s| s.apex.clone()).collect();
    let cdom = cap_domain_from_apexes(&inc.center, inc.radius, r, &apexes, CapKind::Instance)?;
    let star = build_symmetric_cap_domain(inc.radius, r)?;

    let mut rng = rng_for(opts.seed, 5);
    let overlap = cdom.max_cap_overlap(opts.overlap_samples, &mut rng);
    trace.checks.push(ProofCheck::at_least("caps_disjoint", -overlap, 0.0, tol));
    let star_overlap = star.max_cap_overlap(opts.overlap_samples, &mut rng);
    trace.checks.push(ProofCheck::at_least("symmetric_caps_disjoint", -star_overlap, 0.0, tol));

    let per_part = opts.subset_samples.div_ceil(4).max(1);
    let worst = cdom
        .sample(per_part, &mut rng)
        .iter()
        .chain(cdom.caps.iter().flat_map(|cap| cap.arcs.iter().flat_map(|a| a.sample(32))).collect::<Vec<_>>().iter())
        .map(|y| x.points().iter().map(|g| g.dist(y) - r).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::NEG_INFINITY, f64::max);
    trace.checks.push(ProofCheck::at_least("caps_inside_domain", -worst, 0.0, tol));

    let area_c = cdom.area();
    let area_star = star.area();
    trace.checks.push(ProofCheck::at_least("area_d_ge_c", area_domain, area_c, tol));
    trace.checks.push(ProofCheck::at_least("area_c_ge_c_star", area_c, area_star, tol));
    trace.checks.push(ProofCheck::at_least("area_c_star_ge_reuleaux", area_star, reuleaux, tol));
    for (k, (a, b)) in cdom.caps.iter().zip(&star.caps).enumerate() {
        trace.checks.push(ProofCheck::at_least(format!("cap_area_{}", k + 1), a.area, b.area, tol));
    }

    let reuleaux_boundary = boundary_structure(&SimplexBody::new(2, r)?.generators())?;
    let (d_minus_c, c_minus_d) = symmetric_differences(&reuleaux_boundary, &star, opts.radial_steps);
    trace.chain = Some(AreaChain {
        domain: area_domain,
        caps: area_c,
        symmetric_caps: area_star,
        reuleaux,
        reuleaux_minus_symmetric: d_minus_c,
        symmetric_minus_reuleaux: c_minus_d,
    });
    trace.steps = steps;
    trace.cap_domain = Some(cdom);
    trace.symmetric_cap_domain = Some(star);
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::gauss_bonnet_area;
    use crate::sampling::{random_rotation, sample_wide_generator};
    use crate::simplex::reuleaux_triangle;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn uv(c: &[f64]) -> UnitVector<f64> {
        UnitVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn lens_is_a_diameter_contact() {
        for r in [0.4, 1.0, FRAC_PI_2] {
            let a = uv(&[0.0, 0.0, 1.0]);
            let b = a.toward(&uv(&[1.0, 0.2, 0.0]), r).unwrap();
            let g = GeneratorSet::new(2, r, vec![a, b]).unwrap();
            assert!(matches!(classify_contact(&g).unwrap(), Contact::Diameter { .. }), "r={r}");
        }
    }

    #[test]
    fn reuleaux_contacts_are_arc_midpoints() {
        for r in [0.3, 0.7, FRAC_PI_2] {
            let g = reuleaux_triangle::<f64>(r).unwrap();
            let Contact::Triangle { contacts } = classify_contact(&g).unwrap() else { panic!("r={r}") };
            // midpoint of the arc opposite b_i is b_i moved by r through the centre
            for b in g.points() {
                let c = UnitVector::north_pole(2);
                let mid = b.toward(&c, r).unwrap();
                assert!(contacts.iter().any(|a| a.dist(&mid) < 1e-9));
            }
        }
    }

    #[test]
    fn wide_incircle_is_rejected() {
        let g = GeneratorSet::new(2, 0.8, vec![uv(&[0.0, 0.1, 1.0])]).unwrap();
        assert!(matches!(classify_contact(&g), Err(GeomError::Precondition(_))));
    }

    #[test]
    fn reuleaux_cap_domain_is_the_domain() {
        for r in [0.3, 0.7, 1.2, FRAC_PI_2] {
            let g = reuleaux_triangle::<f64>(r).unwrap();
            let (cdom, steps) = build_cap_domain(&g).unwrap();
            for s in &steps {
                assert!(g.points().iter().any(|b| b.dist(&s.apex) < 1e-7), "apex is a vertex");
            }
            let area_d = boundary_structure(&g).unwrap().area();
            assert!((cdom.area() - area_d).abs() < 1e-6, "r={r}: {} vs {area_d}", cdom.area());
            let star = build_symmetric_cap_domain(cdom.inradius(), r).unwrap();
            assert!((star.area() - area_d).abs() < 1e-6);
        }
    }

    #[test]
    fn whole_boundary_path_agrees_with_cap_sum() {
        for seed in 0..30 {
            let g = sample_wide_generator::<f64>(2, [0.3, 0.7, 1.2][seed as usize % 3], 8, seed);
            let Ok((cdom, _)) = build_cap_domain(&g) else { continue };
            let path = gauss_bonnet_area(&cdom.boundary());
            assert!((path - cdom.area()).abs() < 1e-9, "seed {seed}: {path} vs {}", cdom.area());
        }
    }

    #[test]
    fn cap_area_matches_radial_integral() {
        let r = 0.9;
        let rin = 0.42;
        let star = build_symmetric_cap_domain::<f64>(rin, r).unwrap();
        let c = star.center().clone();
        let (e1, e2) = frame_toward(&c, &star.caps[0].apex);
        // area of a star-shaped region about c is the integral of 1 - cos(reach)
        let n = 200_000;
        let h = 2.0 * PI / n as f64;
        let mut total = 0.0;
        for k in 0..n {
            let th = (k as f64 + 0.5) * h;
            let dir: Vec<f64> = (0..3).map(|i| th.cos() * e1[i] + th.sin() * e2[i]).collect();
            // bisection on membership along the ray
            let (mut lo, mut hi) = (0.0, PI / 2.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if star.contains(&c.walk(&dir, mid), 0.0) { lo = mid } else { hi = mid }
            }
            total += (1.0 - lo.cos()) * h;
        }
        assert!((total - star.area()).abs() < 1e-6, "{total} vs {}", star.area());
    }

    #[test]
    fn symmetric_domain_range_is_enforced() {
        assert!(build_symmetric_cap_domain::<f64>(0.5, 0.9).is_err());
        assert!(build_symmetric_cap_domain::<f64>(0.05, 0.9).is_err());
    }

    #[test]
    fn replay_chain_holds_on_random_instances() {
        let opts = ReplayOptions { subset_samples: 2000, overlap_samples: 300, radial_steps: 2000, ..Default::default() };
        let mut triangles = 0;
        for seed in 0..60 {
            let r = [0.3, 0.7, FRAC_PI_2][seed as usize % 3];
            let g = sample_wide_generator::<f64>(2, r, 6 + seed as usize % 10, seed);
            let t = replay_proof(&g, &opts).unwrap();
            for c in &t.checks {
                assert!(c.pass, "seed {seed} {}: {} < {}", c.name, c.lhs, c.rhs);
            }
            if t.branch == Branch::Triangle {
                triangles += 1;
            }
        }
        assert!(triangles > 10, "only {triangles} triangle instances");
    }

    #[test]
    fn classification_is_rotation_invariant() {
        for seed in 0..20 {
            let g = sample_wide_generator::<f64>(2, 0.7, 6, seed);
            let m = random_rotation::<f64, _>(3, &mut rng_for(seed, 9));
            let h = g.transformed(&m);
            let same = matches!(
                (classify_contact(&g), classify_contact(&h)),
                (Ok(Contact::Triangle { .. }), Ok(Contact::Triangle { .. }))
                    | (Ok(Contact::Diameter { .. }), Ok(Contact::Diameter { .. }))
                    | (Err(GeomError::Precondition(_)), Err(GeomError::Precondition(_)))
            );
            assert!(same, "seed {seed}");
        }
    }
}
