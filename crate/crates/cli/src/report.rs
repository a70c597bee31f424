//! Per-instance verification records and the campaign summary.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wideball::proof::Branch;
use wideball::GeneratorSet;

use crate::oracle::OracleResult;

/// One inequality `lhs >= rhs`, passing when `lhs - rhs >= -tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_least(lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = lhs - rhs;
        Self { lhs, rhs, margin, tol, pass: margin >= -tol }
    }

    /// `|value - target| <= allowed`, stored as `allowed >= |value - target|`.
    pub fn close(value: f64, target: f64, allowed: f64) -> Self {
        Self::at_least(allowed, (value - target).abs(), 0.0)
    }

    pub fn failed(reason_value: f64) -> Self {
        Self { lhs: reason_value, rhs: 0.0, margin: f64::NEG_INFINITY, tol: 0.0, pass: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BodyMetrics {
    /// Exact area, perimeter and arc count on `S^2`.
    pub area: Option<f64>,
    pub perimeter: Option<f64>,
    pub n_arcs: Option<usize>,
    /// Exact width on `S^2`, the cutting-plane estimate otherwise.
    pub width: f64,
    pub width_nd: f64,
    pub width_verified: bool,
    pub hull_diameter: f64,
    pub hull_verified: bool,
    pub inradius: f64,
    pub circumradius: f64,
    pub jung_circumradius: f64,
    pub generator_diameter: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance_id: String,
    pub seed: u64,
    pub d: usize,
    pub r: f64,
    pub n_generators: usize,
    /// Regular simplex body (Reuleaux triangle on `S^2`) rather than a random instance.
    pub sentinel: bool,
    pub branch: Option<Branch>,
    pub metrics: BodyMetrics,
    pub checks: BTreeMap<String, Check>,
    pub oracles: Vec<OracleResult>,
    pub error: Option<String>,
    pub generators: GeneratorSet<f64>,
    pub runtime_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.values().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| !c.pass).map(|(k, _)| k.as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub d: usize,
    pub r: f64,
    pub check: String,
    pub count: usize,
    pub failures: usize,
    pub min_margin: f64,
    pub worst_instance: String,
}

/// One row per `(d, r, check)`, in order of first appearance.
pub fn summarize(reports: &[VerificationReport]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    for rep in reports {
        for (name, c) in &rep.checks {
            let pos = rows
                .iter()
                .position(|row| row.d == rep.d && row.r == rep.r && &row.check == name);
            let row = match pos {
                Some(i) => &mut rows[i],
                None => {
                    rows.push(SummaryRow {
                        d: rep.d,
                        r: rep.r,
                        check: name.clone(),
                        count: 0,
                        failures: 0,
                        min_margin: f64::INFINITY,
                        worst_instance: String::new(),
                    });
                    rows.last_mut().unwrap()
                }
            };
            row.count += 1;
            row.failures += usize::from(!c.pass);
            if c.margin < row.min_margin {
                row.min_margin = c.margin;
                row.worst_instance = rep.instance_id.clone();
            }
        }
    }
    rows
}

pub fn write_jsonl<W: Write>(mut w: W, reports: &[VerificationReport]) -> std::io::Result<()> {
    for rep in reports {
        serde_json::to_writer(&mut w, rep)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn write_summary_csv<W: Write>(w: W, rows: &[SummaryRow]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `reports.jsonl` and `summary.csv` into `dir`, creating it if needed.
pub fn write_campaign(dir: &Path, reports: &[VerificationReport]) -> anyhow::Result<()> {
    use anyhow::Context;
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let jsonl = dir.join("reports.jsonl");
    let file = std::fs::File::create(&jsonl).with_context(|| format!("cannot write {}", jsonl.display()))?;
    write_jsonl(std::io::BufWriter::new(file), reports)?;
    let csv_path = dir.join("summary.csv");
    let file = std::fs::File::create(&csv_path).with_context(|| format!("cannot write {}", csv_path.display()))?;
    write_summary_csv(file, &summarize(reports))?;
    Ok(())
}
