//! Verification campaigns over random and sentinel instances.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wideball::body::{inradius_nd, r_hull, width_nd};
use wideball::disk::{boundary_structure, width_2d};
use wideball::minimax::circumradius_minimax;
use wideball::proof::{replay_proof, ReplayOptions};
use wideball::sampling::sample_wide_generator;
use wideball::simplex::{jung_circumradius, reuleaux_triangle, SimplexBody};
use wideball::{diameter, GeneratorSet, GeomError, Result};

use crate::oracle::{oracle_area_mc_sigma, oracle_width_grid, OracleResult};
use crate::report::{BodyMetrics, Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub d: usize,
    pub r: f64,
    pub instances: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CampaignConfig {
    pub cells: Vec<Cell>,
    pub seed: u64,
    /// Adds one regular simplex body per cell.
    pub sentinels: bool,
    pub min_points: usize,
    pub max_points: usize,
    pub width_budget: usize,
    pub hull_support: usize,
    pub mc_samples: usize,
    /// Standard errors allowed between the exact and the Monte-Carlo area.
    pub mc_sigmas: f64,
    pub grid_dirs: usize,
    /// Tolerance of the exact inequalities.
    pub tol: f64,
    pub replay_subset_samples: usize,
    pub replay_overlap_samples: usize,
    pub replay_radial_steps: usize,
}

pub const RADII: [f64; 3] = [0.3, 0.7, FRAC_PI_2];

impl Default for CampaignConfig {
    fn default() -> Self {
        let mut cells: Vec<Cell> = RADII.iter().map(|&r| Cell { d: 2, r, instances: 200 }).collect();
        for d in [3, 4] {
            for (k, &r) in RADII.iter().enumerate() {
                cells.push(Cell { d, r, instances: if k == 0 { 34 } else { 33 } });
            }
        }
        Self {
            cells,
            seed: 0,
            sentinels: true,
            min_points: 3,
            max_points: 12,
            width_budget: 100,
            hull_support: 100,
            mc_samples: 100_000,
            mc_sigmas: 5.0,
            grid_dirs: 360,
            tol: 1e-9,
            replay_subset_samples: 2000,
            replay_overlap_samples: 500,
            replay_radial_steps: 20000,
        }
    }
}

impl CampaignConfig {
    /// A few instances per radius on `S^2` and `S^3`.
    pub fn quick() -> Self {
        Self {
            cells: RADII
                .iter()
                .flat_map(|&r| [Cell { d: 2, r, instances: 6 }, Cell { d: 3, r, instances: 2 }])
                .collect(),
            ..Self::default()
        }
    }

    /// The same cells with `n` random instances each.
    pub fn with_instances(mut self, n: usize) -> Self {
        self.cells.iter_mut().for_each(|c| c.instances = n);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GeomError::Input(m));
        if self.cells.is_empty() {
            return bad("campaign has no cells".into());
        }
        for c in &self.cells {
            if c.d < 2 {
                return bad(format!("cell dimension {} below 2", c.d));
            }
            if !(c.r > 0.0 && c.r <= FRAC_PI_2) {
                return bad(format!("cell radius {} outside (0, pi/2]", c.r));
            }
        }
        if self.min_points == 0 || self.max_points < self.min_points {
            return bad(format!("invalid point range {}..={}", self.min_points, self.max_points));
        }
        if self.mc_samples < 1000 {
            return bad(format!("mc_samples {} below 1000", self.mc_samples));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) || self.mc_sigmas.is_nan() || self.mc_sigmas <= 0.0 {
            return bad("tolerances must be positive".into());
        }
        if self.width_budget == 0 || self.hull_support == 0 || self.grid_dirs == 0 {
            return bad("budgets must be positive".into());
        }
        Ok(())
    }

    fn replay_options(&self, seed: u64) -> ReplayOptions {
        ReplayOptions {
            tol: self.tol,
            subset_samples: self.replay_subset_samples,
            overlap_samples: self.replay_overlap_samples,
            radial_steps: self.replay_radial_steps,
            seed,
        }
    }
}

/// Seed of instance `k` in cell `cell` (SplitMix64 finalizer).
pub fn instance_seed(base: u64, cell: usize, k: usize) -> u64 {
    let mut z = base
        .wrapping_add((cell as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((k as u64 + 1).wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The random instance a campaign builds from `(d, r, seed)`.
pub fn campaign_instance(d: usize, r: f64, seed: u64, cfg: &CampaignConfig) -> GeneratorSet<f64> {
    let span = (cfg.max_points - cfg.min_points + 1) as u64;
    let n = cfg.min_points + (seed % span) as usize;
    sample_wide_generator(d, r, n, seed)
}

pub fn sentinel_instance(d: usize, r: f64) -> Result<GeneratorSet<f64>> {
    if d == 2 {
        reuleaux_triangle(r)
    } else {
        Ok(SimplexBody::new(d, r)?.generators())
    }
}

/// Metrics shared by `metrics` and the campaign.
pub fn body_metrics(x: &GeneratorSet<f64>, cfg: &CampaignConfig, seed: u64) -> Result<BodyMetrics> {
    let d = x.dim();
    let r = x.radius();
    let w = width_nd(x, cfg.width_budget, seed)?;
    let hull = r_hull(x, cfg.hull_support, seed)?;
    let (inradius, _) = inradius_nd(x)?;
    let circ = circumradius_minimax(x.points())?;
    let mut m = BodyMetrics {
        width: w.value,
        width_nd: w.value,
        width_verified: w.verified,
        hull_diameter: hull.diameter,
        hull_verified: hull.verified,
        inradius,
        circumradius: circ.radius,
        jung_circumradius: jung_circumradius(d, r),
        generator_diameter: diameter(x.points())?,
        ..BodyMetrics::default()
    };
    if d == 2 {
        let b = boundary_structure(x)?;
        m.area = Some(b.area());
        m.perimeter = Some(b.perimeter());
        m.n_arcs = Some(b.arcs.len());
        m.width = width_2d(x)?.value;
    }
    Ok(m)
}

struct Outcome {
    metrics: BodyMetrics,
    checks: BTreeMap<String, Check>,
    oracles: Vec<OracleResult>,
    branch: Option<wideball::proof::Branch>,
}

fn evaluate(x: &GeneratorSet<f64>, seed: u64, sentinel: bool, cfg: &CampaignConfig) -> Result<Outcome> {
    let d = x.dim();
    let r = x.radius();
    let metrics = body_metrics(x, cfg, seed)?;
    let mut checks = BTreeMap::new();
    let mut oracles = Vec::new();
    let mut branch = None;
    let floor = r - metrics.jung_circumradius;
    checks.insert("inradius_ge_r_minus_jung".into(), Check::at_least(metrics.inradius, floor, 1e-8));
    checks.insert("hull_diameter_le_r".into(), Check::at_least(r, metrics.hull_diameter, 5e-3));
    checks.insert(
        "width_plus_hull_ge_2r".into(),
        Check::at_least(metrics.width_nd + metrics.hull_diameter, 2.0 * r, 1e-2),
    );
    if d == 2 {
        let area = metrics.area.unwrap_or_default();
        let reference = boundary_structure(&reuleaux_triangle(r)?)?.area();
        checks.insert("area_ge_reuleaux".into(), Check::at_least(area, reference, cfg.tol));
        checks.insert("width_ge_r".into(), Check::at_least(metrics.width, r, 1e-6));
        let mc = oracle_area_mc_sigma(x, cfg.mc_samples, seed, cfg.mc_sigmas)?;
        checks.insert("area_matches_mc".into(), Check::close(area, mc.value, mc.error_bound));
        let grid = oracle_width_grid(x, cfg.grid_dirs)?;
        checks.insert("width_matches_grid".into(), Check::close(metrics.width, grid.value, grid.error_bound + 1e-6));
        oracles.push(mc);
        oracles.push(grid);
        let trace = replay_proof(x, &cfg.replay_options(seed))?;
        branch = Some(trace.branch);
        for c in trace.checks {
            checks.insert(format!("replay.{}", c.name), Check::at_least(c.lhs, c.rhs, c.tol));
        }
        if sentinel {
            checks.insert("sentinel_area_equality".into(), Check::close(area, reference, 1e-6));
            checks.insert("sentinel_width_equality".into(), Check::close(metrics.width, r, 1e-8));
        }
    } else {
        checks.insert("width_ge_r".into(), Check::at_least(metrics.width_nd, r, 1e-3));
    }
    if sentinel {
        checks.insert("sentinel_inradius_equality".into(), Check::close(metrics.inradius, floor, 1e-8));
        checks.insert("sentinel_hull_fixed_point".into(), Check::close(metrics.hull_diameter, r, 5e-3));
    }
    Ok(Outcome { metrics, checks, oracles, branch })
}

/// Runs every check on `x`. Evaluation errors become a failed report rather
/// than aborting, so a campaign always accounts for every instance.
pub fn verify_instance(id: String, x: GeneratorSet<f64>, seed: u64, sentinel: bool, cfg: &CampaignConfig) -> VerificationReport {
    let start = Instant::now();
    let (outcome, error) = match evaluate(&x, seed, sentinel, cfg) {
        Ok(o) => (o, None),
        Err(e) => {
            let mut checks = BTreeMap::new();
            checks.insert("evaluation".into(), Check::failed(f64::NAN));
            (
                Outcome { metrics: BodyMetrics::default(), checks, oracles: Vec::new(), branch: None },
                Some(e.to_string()),
            )
        }
    };
    VerificationReport {
        instance_id: id,
        seed,
        d: x.dim(),
        r: x.radius(),
        n_generators: x.len(),
        sentinel,
        branch: outcome.branch,
        metrics: outcome.metrics,
        checks: outcome.checks,
        oracles: outcome.oracles,
        error,
        generators: x,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

pub fn instance_id(d: usize, r: f64, k: Option<usize>) -> String {
    match k {
        Some(k) => format!("d{d}-r{r:.4}-{k:04}"),
        None => format!("d{d}-r{r:.4}-sentinel"),
    }
}

/// All instances of `cfg`, evaluated in parallel and returned in cell order.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for (ci, cell) in cfg.cells.iter().enumerate() {
        for k in 0..cell.instances {
            jobs.push((ci, Some(k)));
        }
        if cfg.sentinels {
            jobs.push((ci, None));
        }
    }
    let mut reports: Vec<(usize, VerificationReport)> = jobs
        .into_par_iter()
        .enumerate()
        .map(|(order, (ci, k))| {
            let cell = &cfg.cells[ci];
            let seed = instance_seed(cfg.seed, ci, k.unwrap_or(cell.instances));
            let id = instance_id(cell.d, cell.r, k);
            let rep = match k {
                Some(_) => verify_instance(id, campaign_instance(cell.d, cell.r, seed, cfg), seed, false, cfg),
                None => match sentinel_instance(cell.d, cell.r) {
                    Ok(x) => verify_instance(id, x, seed, true, cfg),
                    Err(e) => panic!("sentinel construction failed for a validated cell: {e}"),
                },
            };
            (order, rep)
        })
        .collect();
    reports.sort_by_key(|(order, _)| *order);
    Ok(reports.into_iter().map(|(_, r)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_cells_and_instances() {
        let mut seen = std::collections::HashSet::new();
        for c in 0..5 {
            for k in 0..200 {
                assert!(seen.insert(instance_seed(7, c, k)));
            }
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = CampaignConfig::quick();
        cfg.cells[0].r = 2.0;
        assert!(run_campaign(&cfg).is_err());
        let mut cfg = CampaignConfig::quick();
        cfg.mc_samples = 10;
        assert!(cfg.validate().is_err());
        assert!(CampaignConfig { cells: vec![], ..CampaignConfig::default() }.validate().is_err());
    }

    #[test]
    fn small_campaign_passes() {
        let mut cfg = CampaignConfig::quick().with_instances(2);
        cfg.cells.retain(|c| c.d == 2);
        let reports = run_campaign(&cfg).unwrap();
        assert_eq!(reports.len(), 9);
        for rep in &reports {
            assert!(rep.passed(), "{} failed {:?} {:?}", rep.instance_id, rep.failures(), rep.error);
        }
        assert!(reports.iter().filter(|r| r.sentinel).all(|r| r.checks.contains_key("sentinel_area_equality")));
    }
}
