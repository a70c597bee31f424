//! Command-line interface.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::bail;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wideball::body::mc_volume;
use wideball::measure::schramm_bound;
use wideball::proof::{replay_proof, ReplayOptions};
use wideball::sampling::sample_wide_generator;
use wideball::simplex::SimplexBody;
use wideball::GeneratorSet;

use crate::campaign::{body_metrics, campaign_instance, instance_id, run_campaign, verify_instance, CampaignConfig};
use crate::report::{summarize, write_campaign, write_summary_csv, VerificationReport};
use crate::svg::{domain_scene, proof_scene, render_svg, Projection};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const TOL_ENV: &str = "SPHERE_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "wideball", version, about = "Wide ball bodies on spheres: metrics, verification campaigns and figures")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Geometric tolerance; overrides SPHERE_TOL (default 1e-9).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file (or directory for `verify`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Random wide generator sets.
    Gen {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 6)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Area, width, inradius and hull diameter of generator sets (JSON or JSON lines; `-` for stdin).
    Metrics {
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Verification campaign, or a single campaign instance when --dim and --radius are given.
    Verify {
        /// JSON campaign configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        quick: bool,
        /// Random instances per cell.
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long, requires = "radius")]
        dim: Option<usize>,
        #[arg(long, requires = "dim")]
        radius: Option<f64>,
    },
    /// Replays the area comparison construction on a generator set on S^2.
    ReplayProof { input: PathBuf },
    /// Schramm's bound against the simplex body volume, with a Monte-Carlo check on S^3.
    Schramm {
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: usize,
    },
    /// SVG figure of a generator set on S^2.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Projection::Orthographic)]
        projection: Projection,
        /// Overlay the replayed construction.
        #[arg(long)]
        proof: bool,
    },
}

/// Bad input or an unusable output path.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// `--tol`, then `SPHERE_TOL`, then 1e-9.
pub fn resolve_tol(flag: Option<f64>, env: Option<&str>) -> Result<f64, InputError> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| InputError(format!("{TOL_ENV}={s:?} is not a number")))?,
        (None, None) => DEFAULT_TOL,
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(InputError(format!("tolerance {tol} must be finite and non-negative")));
    }
    Ok(tol)
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(s)
}

/// A single JSON generator set or one per line.
pub fn parse_sets(text: &str) -> anyhow::Result<Vec<GeneratorSet<f64>>> {
    if let Ok(one) = GeneratorSet::from_json(text) {
        return Ok(vec![one]);
    }
    let sets = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| GeneratorSet::from_json(l).map_err(|e| input_err(format!("line {}: {e}", k + 1))))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if sets.is_empty() {
        return Err(input_err("no generator set in input"));
    }
    Ok(sets)
}

fn single_set(path: &Path) -> anyhow::Result<GeneratorSet<f64>> {
    let mut sets = parse_sets(&read_input(path)?)?;
    if sets.len() != 1 {
        return Err(input_err(format!("expected one generator set, found {}", sets.len())));
    }
    Ok(sets.remove(0))
}

fn sink(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).map_err(|e| input_err(format!("cannot write {}: {e}", p.display())))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn emit<T: Serialize>(w: &mut dyn Write, rows: &[T], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut *w, row)?;
                writeln!(w)?;
            }
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut *w);
            for row in rows {
                c.serialize(row)?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct MetricsRow {
    index: usize,
    d: usize,
    r: f64,
    n_generators: usize,
    area: Option<f64>,
    perimeter: Option<f64>,
    n_arcs: Option<usize>,
    width: f64,
    width_nd: f64,
    width_verified: bool,
    hull_diameter: f64,
    hull_verified: bool,
    inradius: f64,
    circumradius: f64,
    jung_circumradius: f64,
    generator_diameter: f64,
}

#[derive(Serialize)]
struct SchrammRow {
    d: usize,
    bound: f64,
    simplex_volume: f64,
    ratio: f64,
    below: bool,
}

#[derive(Serialize)]
struct VolumeRow {
    d: usize,
    samples: usize,
    estimate: f64,
    std_error: f64,
    exact: f64,
    sigmas: f64,
    pass: bool,
}

/// Overall result of a command: `Ok(true)` when every check passed.
pub fn run(cli: Cli, env_tol: Option<&str>) -> anyhow::Result<bool> {
    let tol = resolve_tol(cli.tol, env_tol)?;
    match cli.command {
        Command::Gen { dim, radius, points, count } => {
            if dim < 2 || !(radius > 0.0 && radius <= std::f64::consts::FRAC_PI_2) || points == 0 {
                return Err(input_err(format!("invalid generator parameters: dim {dim}, radius {radius}, points {points}")));
            }
            let mut w = sink(&cli.out)?;
            for k in 0..count {
                let x = sample_wide_generator::<f64>(dim, radius, points, cli.seed.wrapping_add(k as u64));
                match cli.format {
                    Format::Json => writeln!(w, "{}", x.to_json())?,
                    Format::Csv => {
                        if k == 0 {
                            let cols: Vec<String> = (0..=dim).map(|i| format!("x{i}")).collect();
                            writeln!(w, "set,radius,{}", cols.join(","))?;
                        }
                        for p in x.points() {
                            let cs: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
                            writeln!(w, "{k},{radius},{}", cs.join(","))?;
                        }
                    }
                }
            }
            w.flush()?;
            Ok(true)
        }
        Command::Metrics { input, budget } => {
            let sets = parse_sets(&read_input(&input)?)?;
            let cfg = CampaignConfig { width_budget: budget.max(1), hull_support: budget.max(1), ..CampaignConfig::default() };
            let rows = sets
                .iter()
                .enumerate()
                .map(|(index, x)| {
                    let m = body_metrics(x, &cfg, cli.seed)?;
                    Ok(MetricsRow {
                        index,
                        d: x.dim(),
                        r: x.radius(),
                        n_generators: x.len(),
                        area: m.area,
                        perimeter: m.perimeter,
                        n_arcs: m.n_arcs,
                        width: m.width,
                        width_nd: m.width_nd,
                        width_verified: m.width_verified,
                        hull_diameter: m.hull_diameter,
                        hull_verified: m.hull_verified,
                        inradius: m.inradius,
                        circumradius: m.circumradius,
                        jung_circumradius: m.jung_circumradius,
                        generator_diameter: m.generator_diameter,
                    })
                })
                .collect::<wideball::Result<Vec<_>>>()?;
            emit(&mut *sink(&cli.out)?, &rows, cli.format)?;
            Ok(true)
        }
        Command::Verify { config, quick, instances, dim, radius } => {
            let mut cfg = match &config {
                Some(p) => serde_json::from_str::<CampaignConfig>(&read_input(p)?)
                    .map_err(|e| input_err(format!("invalid campaign configuration: {e}")))?,
                None if quick => CampaignConfig::quick(),
                None => CampaignConfig::default(),
            };
            if config.is_none() {
                cfg.seed = cli.seed;
            }
            cfg.tol = tol;
            if let Some(n) = instances {
                cfg = cfg.with_instances(n);
            }
            let reports: Vec<VerificationReport> = match (dim, radius) {
                (Some(d), Some(r)) => {
                    cfg.cells = vec![crate::campaign::Cell { d, r, instances: 1 }];
                    cfg.validate().map_err(|e| input_err(e.to_string()))?;
                    let x = campaign_instance(d, r, cli.seed, &cfg);
                    vec![verify_instance(instance_id(d, r, Some(0)), x, cli.seed, false, &cfg)]
                }
                _ => run_campaign(&cfg).map_err(|e| input_err(e.to_string()))?,
            };
            match &cli.out {
                Some(dir) => write_campaign(dir, &reports).map_err(|e| input_err(format!("{e:#}")))?,
                None => {
                    let mut w = std::io::stdout().lock();
                    match cli.format {
                        Format::Json => crate::report::write_jsonl(&mut w, &reports)?,
                        Format::Csv => write_summary_csv(&mut w, &summarize(&reports))?,
                    }
                }
            }
            let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed()).collect();
            for rep in &failed {
                eprintln!(
                    "FAIL {} seed {} failed {:?}{}\n  instance: {}",
                    rep.instance_id,
                    rep.seed,
                    rep.failures(),
                    rep.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default(),
                    rep.generators.to_json()
                );
            }
            eprintln!("{} instances, {} failed", reports.len(), failed.len());
            Ok(failed.is_empty())
        }
        Command::ReplayProof { input } => {
            let x = single_set(&input)?;
            let opts = ReplayOptions { tol, seed: cli.seed, ..ReplayOptions::default() };
            let trace = replay_proof(&x, &opts).map_err(|e| input_err(e.to_string()))?;
            let mut w = sink(&cli.out)?;
            match cli.format {
                Format::Json => {
                    serde_json::to_writer(&mut w, &trace)?;
                    writeln!(w)?;
                    w.flush()?;
                }
                Format::Csv => emit(&mut *w, &trace.checks, Format::Csv)?,
            }
            for c in trace.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: {} < {} (margin {:e})", c.name, c.lhs, c.rhs, c.margin);
            }
            Ok(trace.passed())
        }
        Command::Schramm { max_dim, mc_samples } => {
            if max_dim < 3 {
                bail!(InputError("--max-dim must be at least 3".into()));
            }
            let rows: Vec<SchrammRow> = (3..=max_dim)
                .map(|d| {
                    let (bound, reference) = schramm_bound::<f64>(d);
                    SchrammRow { d, bound, simplex_volume: reference, ratio: bound / reference, below: bound < reference }
                })
                .collect();
            let mut ok = rows.iter().all(|r| r.below);
            let mut w = sink(&cli.out)?;
            emit(&mut *w, &rows, cli.format)?;
            if mc_samples > 0 {
                let body = SimplexBody::<f64>::new(3, std::f64::consts::FRAC_PI_2)?.generators();
                let est = mc_volume(&body, mc_samples, cli.seed).map_err(|e| input_err(e.to_string()))?;
                let exact = std::f64::consts::PI.powi(2) / 8.0;
                let sigmas = (est.mean - exact).abs() / est.std_error;
                let row = VolumeRow {
                    d: 3,
                    samples: mc_samples,
                    estimate: est.mean,
                    std_error: est.std_error,
                    exact,
                    sigmas,
                    pass: sigmas <= 3.0,
                };
                ok &= row.pass;
                emit(&mut *w, &[row], cli.format)?;
            }
            Ok(ok)
        }
        Command::Render { input, projection, proof } => {
            let x = single_set(&input)?;
            let scene = if proof {
                let opts = ReplayOptions { tol, seed: cli.seed, ..ReplayOptions::default() };
                let trace = replay_proof(&x, &opts).map_err(|e| input_err(e.to_string()))?;
                proof_scene(&x, &trace)
            } else {
                domain_scene(&x)
            }
            .map_err(|e| input_err(e.to_string()))?;
            let svg = render_svg(&scene, projection);
            let mut w = sink(&cli.out)?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
            Ok(true)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let env = std::env::var(TOL_ENV).ok();
    match run(cli, env.as_deref()) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
