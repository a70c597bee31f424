//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use wideball::body::mc_volume;
use wideball::disk::{boundary_structure, width_2d};
use wideball::measure::schramm_bound;
use wideball::proof::{cauchy_arm_profile, Branch};
use wideball::sampling::sample_wide_generator;
use wideball::simplex::{reuleaux_triangle, SimplexBody};
use wideball_cli::campaign::{run_campaign, CampaignConfig, RADII};
use wideball_cli::oracle::oracle_area_mc;
use wideball_cli::report::{write_jsonl, VerificationReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn all_pass(reports: &[&VerificationReport], check: &str) -> (usize, usize, f64) {
    let mut seen = 0;
    let mut failed = 0;
    let mut worst = f64::INFINITY;
    for rep in reports {
        if let Some(c) = rep.checks.get(check) {
            seen += 1;
            failed += usize::from(!c.pass);
            worst = worst.min(c.margin);
        }
    }
    (seen, failed, worst)
}

fn reuleaux_area() -> Outcome {
    let x = reuleaux_triangle::<f64>(FRAC_PI_2).unwrap();
    let _ = boundary_structure(&x).unwrap().area();
    let start = Instant::now();
    let area = boundary_structure(&x).unwrap().area();
    let elapsed = start.elapsed();
    let ball = 4.0 * PI / 3.0;
    let closed = 3.0 * ball / 8.0;
    let pass = (area - FRAC_PI_2).abs() <= 1e-9 && (area - closed).abs() <= 1e-9 && elapsed.as_secs_f64() < 1e-3;
    outcome(pass, format!("area {area:.15}, |area - pi/2| = {:.1e}, {elapsed:?}", (area - FRAC_PI_2).abs()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failed = 0;
    for k in 0..50u64 {
        let r = RADII[k as usize % 3];
        let seed = 10_000 + k;
        let x = sample_wide_generator::<f64>(2, r, 3 + (k as usize % 10), seed);
        let gb = boundary_structure(&x).unwrap().area();
        let mc = oracle_area_mc(&x, 1_000_000, seed).unwrap();
        let ratio = (gb - mc.value).abs() / mc.error_bound;
        worst = worst.max(ratio);
        failed += usize::from(ratio > 1.0);
    }
    let elapsed = start.elapsed();
    let pass = failed == 0 && elapsed.as_secs() < 120;
    outcome(pass, format!("50 instances, {failed} outside 3 sigma, worst {:.2} sigma, {elapsed:.1?}", 3.0 * worst))
}

fn area_inequality(d2: &[&VerificationReport]) -> Outcome {
    let (n, failed, worst) = all_pass(d2, "area_ge_reuleaux");
    let sentinels: Vec<&VerificationReport> = d2.iter().copied().filter(|r| r.sentinel).collect();
    let (ns, fs, _) = all_pass(&sentinels, "sentinel_area_equality");
    let random = d2.iter().filter(|r| !r.sentinel).count();
    let pass = random >= 600 && failed == 0 && ns == 3 && fs == 0;
    outcome(pass, format!("{n} instances ({random} random), {failed} violations, min margin {worst:.3e}; {ns} sentinels, {fs} off equality"))
}

fn width_bound(d2: &[&VerificationReport]) -> Outcome {
    let (n, failed, worst) = all_pass(d2, "width_ge_r");
    let (ng, fg, _) = all_pass(d2, "width_matches_grid");
    let mut fixed = 0.0f64;
    for r in RADII {
        let w = width_2d(&reuleaux_triangle::<f64>(r).unwrap()).unwrap().value;
        fixed = fixed.max((w - r).abs());
    }
    let pass = n == d2.len() && failed == 0 && ng == n && fg == 0 && fixed <= 1e-8;
    outcome(pass, format!("{n} instances, {failed} below r - 1e-6 (min margin {worst:.3e}); grid oracle {fg}/{ng} disagreements; |width(Reuleaux) - r| <= {fixed:.1e}"))
}

fn inradius_bound(all: &[VerificationReport]) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for d in 2..=4 {
        let reps: Vec<&VerificationReport> = all.iter().filter(|r| r.d == d).collect();
        let random = reps.iter().filter(|r| !r.sentinel).count();
        let (_, failed, worst) = all_pass(&reps, "inradius_ge_r_minus_jung");
        let (ns, fs, _) = all_pass(&reps, "sentinel_inradius_equality");
        pass &= random >= 100 && failed == 0 && ns == 3 && fs == 0;
        parts.push(format!("d={d}: {random} random, {failed} violations, min margin {worst:.2e}, sentinels {}/{ns} equal", ns - fs));
    }
    outcome(pass, parts.join("; "))
}

fn hull_diameter(all: &[VerificationReport]) -> Outcome {
    let reps: Vec<&VerificationReport> = all.iter().collect();
    let (n, failed, worst) = all_pass(&reps, "hull_diameter_le_r");
    let sentinels: Vec<&VerificationReport> = all.iter().filter(|r| r.sentinel && r.d == 2).collect();
    let (ns, fs, _) = all_pass(&sentinels, "sentinel_hull_fixed_point");
    let pass = n == all.len() && failed == 0 && ns == 3 && fs == 0;
    outcome(pass, format!("{n} instances, {failed} above r + 5e-3 (min margin {worst:.3e}); Reuleaux fixed point {}/{ns}", ns - fs))
}

fn width_diameter(all: &[VerificationReport]) -> Outcome {
    let reps: Vec<&VerificationReport> = all.iter().collect();
    let (n, failed, worst) = all_pass(&reps, "width_plus_hull_ge_2r");
    outcome(n == all.len() && failed == 0, format!("{n} instances, {failed} violations, min margin {worst:.3e}"))
}

fn schramm() -> Outcome {
    let start = Instant::now();
    let mut below = true;
    for d in 3..=10 {
        let (bound, _) = schramm_bound::<f64>(d);
        let ball = PI.powf((d + 1) as f64 / 2.0) / libm_gamma((d + 3) as f64 / 2.0);
        let volume = (d + 1) as f64 * ball / 2f64.powi(d as i32 + 1);
        below &= bound < volume;
    }
    let body = SimplexBody::<f64>::new(3, FRAC_PI_2).unwrap().generators();
    let est = mc_volume(&body, 10_000_000, 2024).unwrap();
    let exact = PI * PI / 8.0;
    let sigmas = (est.mean - exact).abs() / est.std_error;
    let elapsed = start.elapsed();
    let pass = below && sigmas <= 3.0 && elapsed.as_secs() < 180;
    outcome(pass, format!("bound below volume for d=3..10: {below}; mc {:.5} vs {exact:.5} ({sigmas:.2} sigma), {elapsed:.1?}", est.mean))
}

/// Gamma at positive integers and half integers.
fn libm_gamma(x: f64) -> f64 {
    let (mut g, mut t) = if (x - x.floor()).abs() < 1e-12 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while t < x - 0.5 {
        g *= t;
        t += 1.0;
    }
    g
}

fn proof_replay(d2: &[&VerificationReport]) -> Outcome {
    let triangles: Vec<&VerificationReport> = d2.iter().copied().filter(|r| r.branch == Some(Branch::Triangle)).collect();
    let failed = triangles
        .iter()
        .filter(|r| r.checks.iter().any(|(k, c)| k.starts_with("replay.") && !c.pass))
        .count();
    let chain_links = ["replay.area_d_ge_c", "replay.area_c_ge_c_star", "replay.area_c_star_ge_reuleaux"];
    let complete = triangles.iter().all(|r| {
        chain_links.iter().all(|k| r.checks.contains_key(*k))
            && r.checks.contains_key("replay.caps_disjoint")
            && r.checks.keys().any(|k| k.starts_with("replay.apex_distance"))
    });
    let profiles = RADII
        .iter()
        .all(|&r| cauchy_arm_profile::<f64>(r, 100).map(|p| p.strictly_increasing()).unwrap_or(false));
    let pass = !triangles.is_empty() && failed == 0 && complete && profiles;
    outcome(pass, format!("{} triangle-contact instances, {failed} with a failing link; arm profiles increasing: {profiles}", triangles.len()))
}

fn determinism() -> Outcome {
    let cfg = CampaignConfig::quick();
    let dump = || {
        let mut reports = run_campaign(&cfg).unwrap();
        reports.iter_mut().for_each(|r| r.runtime_ms = 0.0);
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &reports).unwrap();
        buf
    };
    let (a, b) = (dump(), dump());
    outcome(a == b && !a.is_empty(), format!("{} bytes, identical: {}", a.len(), a == b))
}

fn main() {
    let start = Instant::now();
    let campaign = run_campaign(&CampaignConfig::default()).expect("default campaign runs");
    let d2: Vec<&VerificationReport> = campaign.iter().filter(|r| r.d == 2).collect();
    let errors = campaign.iter().filter(|r| r.error.is_some()).count();
    println!("default campaign: {} reports, {errors} evaluation errors, {:.1?}", campaign.len(), start.elapsed());

    let results = [
        ("1 exact Reuleaux area", reuleaux_area()),
        ("2 Gauss-Bonnet vs Monte-Carlo area", oracle_equivalence()),
        ("3 area lower bound", area_inequality(&d2)),
        ("4 width lower bound", width_bound(&d2)),
        ("5 inradius lower bound", inradius_bound(&campaign)),
        ("6 hull diameter", hull_diameter(&campaign)),
        ("7 width plus hull diameter", width_diameter(&campaign)),
        ("8 Schramm bound and simplex volume", schramm()),
        ("9 proof replay", proof_replay(&d2)),
        ("10 determinism", determinism()),
    ];
    let mut failed = errors > 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed |= !o.pass;
    }
    if failed {
        eprintln!("acceptance failed");
        std::process::exit(1);
    }
}
