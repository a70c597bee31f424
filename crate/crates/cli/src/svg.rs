//! SVG figures of domains on `S^2` in orthographic or stereographic projection.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wideball::disk::{boundary_structure, width_2d, Arc};
use wideball::minimax::circumradius_minimax;
use wideball::proof::{CapDomain, ProofTrace};
use wideball::{GeneratorSet, GeomError, Result, UnitVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    Orthographic,
    Stereographic,
}

type V3 = [f64; 3];

#[derive(Clone, Debug)]
pub enum Item {
    Path { points: Vec<V3>, closed: bool },
    Point { at: V3, label: Option<String> },
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub id: String,
    pub stroke: String,
    pub fill: String,
    pub items: Vec<Item>,
    /// Layers that set the viewport; the rest may run off the figure.
    pub framing: bool,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub pole: V3,
    pub layers: Vec<Layer>,
}

const ARC_SAMPLES: usize = 96;

fn v3(p: &UnitVector<f64>) -> V3 {
    let c = p.coords();
    [c[0], c[1], c[2]]
}

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

fn arc_path(arcs: &[Arc<f64>]) -> Vec<V3> {
    let mut pts: Vec<V3> = Vec::new();
    for arc in arcs {
        let n = ((arc.span / std::f64::consts::TAU) * ARC_SAMPLES as f64).ceil() as usize + 2;
        let s = arc.sample(n);
        pts.extend(s[..s.len() - 1].iter().map(v3));
    }
    pts
}

fn circle(center: &UnitVector<f64>, radius: f64) -> Vec<V3> {
    let c = v3(center);
    let helper = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = unit(cross(&c, &helper));
    let e2 = cross(&c, &e1);
    let (s, co) = radius.sin_cos();
    (0..ARC_SAMPLES)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / ARC_SAMPLES as f64;
            std::array::from_fn(|m| co * c[m] + s * (t.cos() * e1[m] + t.sin() * e2[m]))
        })
        .collect()
}

fn layer(id: &str, stroke: &str, fill: &str, framing: bool, items: Vec<Item>) -> Layer {
    Layer { id: id.into(), stroke: stroke.into(), fill: fill.into(), items, framing }
}

/// Boundary, generators, incircle and witness lune of `B[X, r]`.
pub fn domain_scene(x: &GeneratorSet<f64>) -> Result<Scene> {
    if x.dim() != 2 {
        return Err(GeomError::Input(format!("figures need a generator set on S^2, got S^{}", x.dim())));
    }
    let b = boundary_structure(x)?;
    let circ = circumradius_minimax(x.points())?;
    let pole = v3(&b.center);
    let mut layers = vec![
        layer("incircle", "#888888", "none", true, vec![Item::Path {
            points: circle(&circ.center, x.radius() - circ.radius),
            closed: true,
        }]),
        layer("arcs", "#1f4e9c", "#dfe8f6", true, vec![Item::Path { points: arc_path(&b.arcs), closed: true }]),
        layer(
            "generators",
            "#000000",
            "#000000",
            true,
            x.points()
                .iter()
                .enumerate()
                .map(|(k, p)| Item::Point { at: v3(p), label: Some(format!("x{}", k + 1)) })
                .collect(),
        ),
    ];
    if let Some(lune) = width_2d(x)?.witness {
        let (u, v) = (v3(&lune.u), v3(&lune.v));
        let n = unit(cross(&u, &v));
        let half = |a: &V3, b: &V3| -> Vec<V3> {
            let g = dot(b, a);
            let m = unit(std::array::from_fn(|k| b[k] - g * a[k]));
            (0..=ARC_SAMPLES)
                .map(|k| {
                    let t = std::f64::consts::PI * k as f64 / ARC_SAMPLES as f64;
                    std::array::from_fn(|i| t.cos() * n[i] + t.sin() * m[i])
                })
                .collect()
        };
        layers.push(layer("lune", "#c0392b", "none", false, vec![
            Item::Path { points: half(&u, &v), closed: false },
            Item::Path { points: half(&v, &u), closed: false },
        ]));
    }
    Ok(Scene { pole, layers })
}

/// Rotation taking `from` to `to` about their common normal.
fn rotate_onto(from: &V3, to: &V3, p: &V3) -> V3 {
    let axis = cross(from, to);
    let s = dot(&axis, &axis).sqrt();
    let c = dot(from, to);
    if s < 1e-15 {
        return if c > 0.0 { *p } else { [-p[0], -p[1], p[2]] };
    }
    let k = [axis[0] / s, axis[1] / s, axis[2] / s];
    let kxp = cross(&k, p);
    let kp = dot(&k, p);
    std::array::from_fn(|i| p[i] * c + kxp[i] * s + k[i] * kp * (1.0 - c))
}

fn cap_domain_path(dom: &CapDomain<f64>, onto: Option<&V3>) -> Vec<V3> {
    let from = v3(dom.center());
    arc_path(&dom.boundary())
        .into_iter()
        .map(|p| match onto {
            Some(to) => rotate_onto(&from, to, &p),
            None => p,
        })
        .collect()
}

/// The domain scene with the cap domain `C`, the symmetric cap domain `C*`
/// moved onto the same centre, contacts and apexes of a replayed proof.
pub fn proof_scene(x: &GeneratorSet<f64>, trace: &ProofTrace) -> Result<Scene> {
    let mut scene = domain_scene(x)?;
    scene.layers.retain(|l| l.id != "lune");
    let center: V3 = [trace.center[0], trace.center[1], trace.center[2]];
    if let Some(c) = &trace.cap_domain {
        scene.layers.push(layer("caps", "#27ae60", "none", true, vec![Item::Path {
            points: cap_domain_path(c, None),
            closed: true,
        }]));
    }
    if let Some(c) = &trace.symmetric_cap_domain {
        scene.layers.push(layer("symmetric-caps", "#8e44ad", "none", true, vec![Item::Path {
            points: cap_domain_path(c, Some(&center)),
            closed: true,
        }]));
    }
    let mut marks = vec![Item::Point { at: center, label: Some("c".into()) }];
    for (k, a) in trace.contacts.iter().enumerate() {
        marks.push(Item::Point { at: [a[0], a[1], a[2]], label: Some(format!("a{}", k + 1)) });
    }
    for (k, s) in trace.steps.iter().enumerate() {
        marks.push(Item::Point { at: v3(&s.apex), label: Some(format!("q{}", k + 1)) });
    }
    scene.layers.push(layer("construction", "#d35400", "#d35400", true, marks));
    Ok(scene)
}

fn frame(pole: &V3) -> (V3, V3) {
    let helper = if pole[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [0.0, 1.0, 0.0] };
    let e2 = unit(std::array::from_fn(|k| helper[k] - dot(&helper, pole) * pole[k]));
    let e1 = cross(&e2, pole);
    (e1, e2)
}

fn project(p: &V3, pole: &V3, e1: &V3, e2: &V3, proj: Projection) -> Option<(f64, f64)> {
    let z = dot(p, pole);
    match proj {
        Projection::Orthographic if z >= 0.0 => Some((dot(p, e1), dot(p, e2))),
        Projection::Stereographic if z > -0.9 => Some((dot(p, e1) / (1.0 + z), dot(p, e2) / (1.0 + z))),
        _ => None,
    }
}

const SIZE: f64 = 800.0;

/// Renders `scene` seen from `scene.pole`. Output depends only on the input.
pub fn render_svg(scene: &Scene, proj: Projection) -> String {
    let (e1, e2) = frame(&scene.pole);
    let pr = |p: &V3| project(p, &scene.pole, &e1, &e2, proj);
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for l in scene.layers.iter().filter(|l| l.framing) {
        for item in &l.items {
            let pts: Vec<V3> = match item {
                Item::Path { points, .. } => points.clone(),
                Item::Point { at, .. } => vec![*at],
            };
            for (x, y) in pts.iter().filter_map(pr) {
                lo = (lo.0.min(x), lo.1.min(y));
                hi = (hi.0.max(x), hi.1.max(y));
            }
        }
    }
    if !lo.0.is_finite() {
        lo = (-1.0, -1.0);
        hi = (1.0, 1.0);
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9) * 1.3;
    let mid = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    let to_px = |(x, y): (f64, f64)| ((x - mid.0) / span * SIZE + SIZE / 2.0, SIZE / 2.0 - (y - mid.1) / span * SIZE);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for l in &scene.layers {
        let _ = writeln!(
            out,
            r#"<g id="{}" stroke="{}" fill="{}" stroke-width="1.5"><title>{}</title>"#,
            l.id, l.stroke, l.fill, l.id
        );
        for item in &l.items {
            match item {
                Item::Path { points, closed } => {
                    let mut d = String::new();
                    let mut pen_down = false;
                    for p in points {
                        match pr(p) {
                            Some(q) => {
                                let (x, y) = to_px(q);
                                let _ = write!(d, "{}{x:.3} {y:.3} ", if pen_down { "L" } else { "M" });
                                pen_down = true;
                            }
                            None => pen_down = false,
                        }
                    }
                    if *closed && !d.is_empty() {
                        d.push('Z');
                    }
                    let fill = if *closed { "" } else { r#" fill="none""# };
                    let _ = writeln!(out, r#"<path d="{}"{fill}/>"#, d.trim_end());
                }
                Item::Point { at, label } => {
                    if let Some(q) = pr(at) {
                        let (x, y) = to_px(q);
                        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
                        if let Some(text) = label {
                            let _ = writeln!(
                                out,
                                r#"<text x="{:.3}" y="{:.3}" font-size="14" stroke="none">{text}</text>"#,
                                x + 5.0,
                                y - 5.0
                            );
                        }
                    }
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
