//! Deterministic SVG rendering. Layers are drawn in a fixed order (fills,
//! rings, lines, vertices, tangents); coordinates are rounded to six
//! decimals and the y axis points up.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::degeneration::{CurveFamily, DegenerationReport};
use crate::harmonic::{AlcoveClassification, HarmonicSpec, RingReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub min_x: f64,
    pub min_y: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    pub fn square(center: (f64, f64), half: f64) -> Self {
        Self { min_x: center.0 - half, min_y: center.1 - half, width: 2.0 * half, height: 2.0 * half }
    }

    fn max_x(&self) -> f64 {
        self.min_x + self.width
    }

    fn max_y(&self) -> f64 {
        self.min_y + self.height
    }

    /// Smallest square around `points`, padded by `pad` of its size.
    pub fn around(points: &[(f64, f64)], pad: f64) -> Self {
        let finite: Vec<_> = points.iter().filter(|p| p.0.is_finite() && p.1.is_finite()).collect();
        if finite.is_empty() {
            return Self::square((0.0, 0.0), 1.0);
        }
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in finite {
            lo_x = lo_x.min(p.0);
            lo_y = lo_y.min(p.1);
            hi_x = hi_x.max(p.0);
            hi_y = hi_y.max(p.1);
        }
        let half = 0.5 * (hi_x - lo_x).max(hi_y - lo_y).max(1e-3) * (1.0 + 2.0 * pad);
        Self::square((0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)), half)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fill {
    pub class: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ring {
    pub k: usize,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tangent {
    pub x: f64,
    pub y: f64,
    pub real: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvgScene {
    pub viewport: Viewport,
    pub fills: Vec<Fill>,
    /// Circles about the origin.
    pub rings: Vec<Ring>,
    /// `a x + b y + c = 0`, clipped to the viewport when drawn.
    pub lines: Vec<[f64; 3]>,
    pub vertices: Vec<(f64, f64)>,
    pub tangents: Vec<Tangent>,
}

impl Default for SvgScene {
    fn default() -> Self {
        Self {
            viewport: Viewport::square((0.0, 0.0), 1.0),
            fills: vec![],
            rings: vec![],
            lines: vec![],
            vertices: vec![],
            tangents: vec![],
        }
    }
}

const PALETTE: [&str; 6] = ["#f2c14e", "#f78154", "#4d9078", "#5fad56", "#b4436c", "#4f6d7a"];

fn meet(l: &[f64; 3], m: &[f64; 3]) -> Option<(f64, f64)> {
    let d = l[0] * m[1] - l[1] * m[0];
    let p = ((l[1] * m[2] - l[2] * m[1]) / d, (l[2] * m[0] - l[0] * m[2]) / d);
    (p.0.is_finite() && p.1.is_finite() && d.abs() > 1e-12 * l[0].hypot(l[1]) * m[0].hypot(m[1])).then_some(p)
}

fn pairwise_meets(lines: &[[f64; 3]]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            out.extend(meet(l, m));
        }
    }
    out
}

fn exact_polygon(arr: &Arrangement, a: usize) -> Vec<(f64, f64)> {
    arr.alcove_polygon(a).iter().map(|(x, y)| (x.to_f64(), y.to_f64())).collect()
}

impl SvgScene {
    /// Regular n-gon lines, their finite rings and intersections, and, when
    /// given, the alcoves shaded by class.
    pub fn harmonic(
        spec: &HarmonicSpec,
        rings: &[RingReport],
        classes: Option<(&Arrangement, &AlcoveClassification)>,
    ) -> Self {
        let outer = rings.iter().map(|r| r.predicted_radius).fold(1.0, f64::max);
        let mut scene = Self {
            viewport: Viewport::square((0.0, 0.0), 1.15 * outer),
            rings: rings.iter().map(|r| Ring { k: r.k, radius: r.predicted_radius }).collect(),
            lines: spec.lines.clone(),
            vertices: pairwise_meets(&spec.lines),
            ..Self::default()
        };
        if let Some((arr, c)) = classes {
            let mut push = |class: String, a: usize| scene.fills.push(Fill { class, points: exact_polygon(arr, a) });
            push("central".into(), c.central.alcove);
            for a in &c.first_kind {
                push("first".into(), a.alcove);
            }
            for (j, class) in &c.second_kind {
                for a in class {
                    push(format!("second_{j}"), a.alcove);
                }
            }
        }
        scene
    }

    pub fn arrangement(arr: &Arrangement) -> Self {
        let lines: Vec<[f64; 3]> = arr.lines().iter().map(|l| l.to_f64()).collect();
        let vertices: Vec<(f64, f64)> =
            arr.vertices().iter().map(|v| (v.x.to_f64(), v.y.to_f64())).collect();
        Self {
            viewport: Viewport::around(&vertices, 0.15),
            fills: (0..arr.alcoves().len())
                .map(|a| Fill { class: "alcove".into(), points: exact_polygon(arr, a) })
                .collect(),
            lines,
            vertices,
            ..Self::default()
        }
    }

    /// Lines, nodes and the real parts of the tangents at the smallest `s`.
    pub fn degeneration(family: &CurveFamily, report: &DegenerationReport) -> Self {
        let vertices: Vec<(f64, f64)> = family.nodes().iter().map(|n| (n.x, n.y)).collect();
        let tangents = report
            .reports
            .last()
            .map(|r| {
                r.tangents
                    .iter()
                    .map(|t| Tangent { x: t.x.re, y: t.y.re, real: t.real })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            viewport: Viewport::around(&vertices, 0.3),
            lines: family.lines().to_vec(),
            vertices,
            tangents,
            ..Self::default()
        }
    }

    /// Fill color per class, assigned in sorted class order.
    pub fn class_colors(&self) -> BTreeMap<&str, &'static str> {
        let mut colors: BTreeMap<&str, &'static str> = self.fills.iter().map(|f| (f.class.as_str(), "")).collect();
        for (k, v) in colors.values_mut().enumerate() {
            *v = PALETTE[k % PALETTE.len()];
        }
        colors
    }

    /// Segment of `a x + b y + c = 0` inside the viewport, if any.
    fn clip(&self, l: &[f64; 3]) -> Option<((f64, f64), (f64, f64))> {
        let v = &self.viewport;
        let (a, b, c) = (l[0], l[1], l[2]);
        let mut hits: Vec<(f64, f64)> = Vec::new();
        let inside = |x: f64, lo: f64, hi: f64| x >= lo - 1e-12 && x <= hi + 1e-12;
        if b != 0.0 {
            for x in [v.min_x, v.max_x()] {
                let y = -(a * x + c) / b;
                if inside(y, v.min_y, v.max_y()) {
                    hits.push((x, y));
                }
            }
        }
        if a != 0.0 {
            for y in [v.min_y, v.max_y()] {
                let x = -(b * y + c) / a;
                if inside(x, v.min_x, v.max_x()) {
                    hits.push((x, y));
                }
            }
        }
        let first = *hits.first()?;
        let far = hits
            .iter()
            .copied()
            .max_by(|p, q| {
                let d = |r: &(f64, f64)| (r.0 - first.0).hypot(r.1 - first.1);
                d(p).total_cmp(&d(q))
            })?;
        Some((first, far))
    }

    pub fn to_svg(&self) -> String {
        let v = &self.viewport;
        let unit = v.width.max(v.height) / 400.0;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="{} {} {} {}">"#,
            num(v.min_x),
            num(-v.max_y()),
            num(v.width),
            num(v.height)
        );

        let colors = self.class_colors();
        let _ = writeln!(out, r#"<g id="fills" stroke="none" fill-opacity="0.6">"#);
        for f in &self.fills {
            let pts: Vec<String> = f.points.iter().map(|p| format!("{},{}", num(p.0), num(-p.1))).collect();
            let _ = writeln!(
                out,
                r#"<polygon class="{}" fill="{}" points="{}"/>"#,
                f.class,
                colors[f.class.as_str()],
                pts.join(" ")
            );
        }
        let _ = writeln!(out, "</g>");

        let _ = writeln!(out, r##"<g id="rings" fill="none" stroke="#999999" stroke-width="{}">"##, num(unit));
        for r in &self.rings {
            let _ = writeln!(out, r#"<circle class="ring-{}" cx="0" cy="0" r="{}"/>"#, r.k, num(r.radius));
        }
        let _ = writeln!(out, "</g>");

        let _ = writeln!(out, r##"<g id="lines" stroke="#1b1b1b" stroke-width="{}">"##, num(unit));
        for l in &self.lines {
            if let Some((p, q)) = self.clip(l) {
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    num(p.0),
                    num(-p.1),
                    num(q.0),
                    num(-q.1)
                );
            }
        }
        let _ = writeln!(out, "</g>");

        let _ = writeln!(out, r##"<g id="vertices" fill="#1b1b1b">"##);
        for p in &self.vertices {
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(p.0), num(-p.1), num(2.5 * unit));
        }
        let _ = writeln!(out, "</g>");

        let _ = writeln!(out, r#"<g id="tangents">"#);
        for t in &self.tangents {
            let fill = if t.real { "#d7263d" } else { "#2e86ab" };
            let _ = writeln!(
                out,
                r#"<circle class="{}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
                if t.real { "real" } else { "complex" },
                num(t.x),
                num(-t.y),
                num(1.8 * unit)
            );
        }
        let _ = writeln!(out, "</g>");
        out.push_str("</svg>\n");
        out
    }
}

/// Six decimals, no negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn emit_svg(scene: &SvgScene, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, scene.to_svg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build;
    use crate::harmonic::{classify_alcoves, generate, generate_rationalized, survey_rings};

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    fn layer<'a>(svg: &'a str, id: &str) -> &'a str {
        let start = svg.find(&format!(r#"<g id="{id}""#)).unwrap();
        let end = start + svg[start..].find("</g>").unwrap();
        &svg[start..end]
    }

    #[test]
    fn nonagon_scene() {
        let spec = generate(9).unwrap();
        let survey = survey_rings(&spec, 1e-9).unwrap();
        let svg = SvgScene::harmonic(&spec, &survey.rings, None).to_svg();
        assert_eq!(count(layer(&svg, "lines"), "<line "), 9);
        assert_eq!(count(layer(&svg, "rings"), "<circle "), 4);
        assert_eq!(count(layer(&svg, "vertices"), "<circle "), 36);
    }

    #[test]
    fn empty_scene_is_still_a_document() {
        let svg = SvgScene::default().to_svg();
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        for id in ["fills", "rings", "lines", "vertices", "tangents"] {
            assert!(svg.contains(&format!(r#"<g id="{id}""#)));
        }
        assert_eq!(count(&svg, "<g "), count(&svg, "</g>"));
    }

    #[test]
    fn pentagon_fills_use_two_colors() {
        let spec = generate_rationalized(5).unwrap();
        let arr = build(spec.rationalized_lines.as_ref().unwrap()).unwrap();
        let c = classify_alcoves(&spec, &arr).unwrap();
        let rings = survey_rings(&spec, 1e-9).unwrap().rings;
        let scene = SvgScene::harmonic(&spec, &rings, Some((&arr, &c)));
        let svg = scene.to_svg();
        assert_eq!(count(&svg, "<polygon "), 6);
        let colors: std::collections::BTreeSet<&str> =
            svg.split("fill=\"").skip(1).filter_map(|s| s.split('"').next()).filter(|s| s.starts_with('#')).collect();
        assert!(colors.len() >= 2);
        assert_eq!(scene.class_colors().len(), 2);
    }

    #[test]
    fn layers_in_fixed_order_and_rounded() {
        let spec = generate(5).unwrap();
        let rings = survey_rings(&spec, 1e-9).unwrap().rings;
        let svg = SvgScene::harmonic(&spec, &rings, None).to_svg();
        let pos: Vec<usize> = ["fills", "rings", "lines", "vertices", "tangents"]
            .iter()
            .map(|id| svg.find(&format!(r#"<g id="{id}""#)).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        let x1 = svg.split("x1=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(x1.split('.').nth(1).unwrap().len(), 6);
        assert_eq!(svg, SvgScene::harmonic(&spec, &rings, None).to_svg());
    }

    #[test]
    fn clipping_keeps_lines_inside() {
        let scene = SvgScene { lines: vec![[1.0, 1.0, 0.0], [1.0, 0.0, -5.0]], ..SvgScene::default() };
        let svg = scene.to_svg();
        assert_eq!(count(&svg, "<line "), 1);
        assert!(svg.contains(r#"x1="-1.000000" y1="-1.000000" x2="1.000000" y2="1.000000""#), "{svg}");
        assert_eq!(num(-0.0000001), "0.000000");
    }
}
