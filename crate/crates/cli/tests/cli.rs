use std::path::Path;
use std::process::{Command, Output};

fn wideball(args: &[&str], env_tol: Option<&str>, dir: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wideball"));
    cmd.args(args).current_dir(dir).env_remove("SPHERE_TOL");
    if let Some(t) = env_tol {
        cmd.env("SPHERE_TOL", t);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

const REULEAUX: &str = r#"{"dim":2,"radius":1.5707963267948966,"points":[[1,0,0],[0,1,0],[0,0,1]]}"#;

#[test]
fn gen_then_metrics_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = wideball(&["--seed", "4", "--out", "sets.jsonl", "gen", "--radius", "0.7", "--points", "5", "--count", "3"], None, dir.path());
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("sets.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 3);
    let o = wideball(&["metrics", "sets.jsonl"], None, dir.path());
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert!(row["width"].as_f64().unwrap() >= 0.7 - 1e-6);
        assert!(row["area"].as_f64().unwrap() > 0.0);
    }
    let o = wideball(&["--format", "csv", "metrics", "sets.jsonl"], None, dir.path());
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("index,d,r,"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn metrics_of_the_reuleaux_triangle() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("r.json"), REULEAUX).unwrap();
    let o = wideball(&["metrics", "r.json"], None, dir.path());
    let row: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((row["area"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    assert!((row["width"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    assert_eq!(row["n_arcs"].as_u64(), Some(3));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"dim":2,"radius":0.3,"points":[[1,0,0],[0,1,0]]}"#).unwrap();
    assert_eq!(code(&wideball(&["metrics", "bad.json"], None, dir.path())), 2);
    assert_eq!(code(&wideball(&["metrics", "missing.json"], None, dir.path())), 2);
    assert_eq!(code(&wideball(&["gen", "--radius", "2.0"], None, dir.path())), 2);
    assert_eq!(code(&wideball(&["frobnicate"], None, dir.path())), 2);
    assert_eq!(code(&wideball(&["metrics", "bad.json", "--format", "xml"], None, dir.path())), 2);
    std::fs::write(dir.path().join("s3.json"), r#"{"dim":3,"radius":0.5,"points":[[1,0,0,0]]}"#).unwrap();
    assert_eq!(code(&wideball(&["render", "s3.json"], None, dir.path())), 2);
    assert_eq!(code(&wideball(&["replay-proof", "s3.json"], None, dir.path())), 2);
    std::fs::write(dir.path().join("r.json"), REULEAUX).unwrap();
    assert_eq!(code(&wideball(&["metrics", "r.json"], Some("not-a-number"), dir.path())), 2);
}

#[test]
fn tolerance_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--seed", "5", "verify", "--dim", "2", "--radius", "0.7"];
    assert_eq!(code(&wideball(&args, None, dir.path())), 0);
    let strict = wideball(&args, Some("0"), dir.path());
    assert_eq!(code(&strict), 1);
    assert!(String::from_utf8_lossy(&strict.stderr).contains("FAIL"));
    let mut with_flag = vec!["--tol", "1e-9"];
    with_flag.extend_from_slice(&args);
    assert_eq!(code(&wideball(&with_flag, Some("0"), dir.path())), 0);
    let mut zero_flag = vec!["--tol", "0"];
    zero_flag.extend_from_slice(&args);
    assert_eq!(code(&wideball(&zero_flag, Some("1e-9"), dir.path())), 1);
}

#[test]
fn verify_writes_reports_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"cells":[{"d":2,"r":0.7,"instances":3},{"d":3,"r":0.3,"instances":1}],"seed":11}"#;
    std::fs::write(dir.path().join("cfg.json"), cfg).unwrap();
    let o = wideball(&["--out", "run", "verify", "--config", "cfg.json"], None, dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let jsonl = std::fs::read_to_string(dir.path().join("run/reports.jsonl")).unwrap();
    let ids: Vec<String> = jsonl
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["instance_id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["d2-r0.7000-0000", "d2-r0.7000-0001", "d2-r0.7000-0002", "d2-r0.7000-sentinel", "d3-r0.3000-0000", "d3-r0.3000-sentinel"]);
    let summary = std::fs::read_to_string(dir.path().join("run/summary.csv")).unwrap();
    assert!(summary.starts_with("d,r,check,count,failures,min_margin,worst_instance"));
    assert!(summary.lines().any(|l| l.starts_with("2,0.7,area_ge_reuleaux,4,0,")));
    std::fs::write(dir.path().join("blocker"), "").unwrap();
    let o = wideball(&["--out", "blocker/run", "verify", "--config", "cfg.json"], None, dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let o = wideball(&["--seed", "8", "--out", "x.json", "gen", "--radius", "0.7", "--points", "9"], None, dir.path());
    assert_eq!(code(&o), 0);
    for proj in ["orthographic", "stereographic"] {
        let a = wideball(&["render", "x.json", "--proof", "--projection", proj], None, dir.path());
        let b = wideball(&["render", "x.json", "--proof", "--projection", proj], None, dir.path());
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        let svg = String::from_utf8(a.stdout).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"<g id="arcs""#) && svg.contains(r#"<g id="construction""#));
    }
    std::fs::write(dir.path().join("r.json"), REULEAUX).unwrap();
    let o = wideball(&["--out", "r.svg", "render", "r.json"], None, dir.path());
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert!(svg.contains(r#"<g id="lune""#));
}

#[test]
fn replay_and_schramm_report_checks() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("r.json"), REULEAUX).unwrap();
    let o = wideball(&["replay-proof", "r.json"], None, dir.path());
    assert_eq!(code(&o), 0);
    let trace: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(trace["branch"], "triangle");
    assert!(trace["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let o = wideball(&["--format", "csv", "schramm", "--mc-samples", "0"], None, dir.path());
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}
