//! Scatter plots of scanned classes in the plane of a 2-dimensional cone.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{ClassEntry, ScanReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerShape {
    Circle,
    Triangle,
    Square,
    Diamond,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub shape: MarkerShape,
    pub color: String,
    pub label: String,
}

/// Verdict categories, one marker each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    TotallyReal,
    NotTotallyReal,
    Error,
}

impl Category {
    pub fn of(e: &ClassEntry) -> Category {
        match e.report() {
            Some(r) if r.poly.totally_real => Category::TotallyReal,
            Some(_) => Category::NotTotallyReal,
            None => Category::Error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotStyle {
    pub totally_real: Marker,
    pub not_totally_real: Marker,
    pub error: Marker,
    /// Marker radius in pixels.
    pub point_size: f64,
    /// Pixels per lattice unit.
    pub scale: f64,
    /// Horizontal range; derived from the cone and bound when absent.
    pub x_range: Option<(f64, f64)>,
    /// Vertical range; `(0, bound)` when absent.
    pub y_range: Option<(f64, f64)>,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            totally_real: Marker {
                shape: MarkerShape::Circle,
                color: "#0072B2".into(),
                label: "totally real trace field".into(),
            },
            not_totally_real: Marker {
                shape: MarkerShape::Triangle,
                color: "#009E73".into(),
                label: "trace field not totally real".into(),
            },
            error: Marker {
                shape: MarkerShape::Square,
                color: "#D55E00".into(),
                label: "error or inconclusive".into(),
            },
            point_size: 3.0,
            scale: 12.0,
            x_range: None,
            y_range: None,
        }
    }
}

impl PlotStyle {
    pub fn marker(&self, c: Category) -> &Marker {
        match c {
            Category::TotallyReal => &self.totally_real,
            Category::NotTotallyReal => &self.not_totally_real,
            Category::Error => &self.error,
        }
    }

    fn check(&self) -> Result<()> {
        let ms = [&self.totally_real, &self.not_totally_real, &self.error];
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                if a.shape == b.shape || a.color.eq_ignore_ascii_case(&b.color) {
                    return Err(Error::Config(
                        "plot categories need distinct marker shapes and colors".into(),
                    ));
                }
            }
        }
        if !(self.point_size > 0.0 && self.scale > 0.0) {
            return Err(Error::Config("point size and scale must be positive".into()));
        }
        Ok(())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn marker_svg(out: &mut String, m: &Marker, x: f64, y: f64, r: f64) {
    let c = escape(&m.color);
    match m.shape {
        MarkerShape::Circle => {
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{c}"/>"#);
        }
        MarkerShape::Square => {
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{c}"/>"#,
                x - r,
                y - r,
                2.0 * r,
                2.0 * r
            );
        }
        MarkerShape::Triangle => {
            let h = r * 1.2;
            let _ = writeln!(
                out,
                r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{c}"/>"#,
                x,
                y - h,
                x - h,
                y + h * 0.8,
                x + h,
                y + h * 0.8
            );
        }
        MarkerShape::Diamond => {
            let h = r * 1.3;
            let _ = writeln!(
                out,
                r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{c}"/>"#,
                x,
                y - h,
                x + h,
                y,
                x,
                y + h,
                x - h,
                y
            );
        }
    }
}

/// Boundary directions of a 2-dimensional cone, as `(free, height)` pairs:
/// for each inequality row, the direction along its kernel that satisfies
/// every other row.
fn boundary_rays(ineqs: &[Vec<i64>], height_index: usize) -> Vec<(i64, i64)> {
    let mut rays = Vec::new();
    for r in ineqs {
        for d in [[r[1], -r[0]], [-r[1], r[0]]] {
            if d == [0, 0] || !ineqs.iter().all(|s| s[0] * d[0] + s[1] * d[1] >= 0) {
                continue;
            }
            let ray = if height_index == 1 { (d[0], d[1]) } else { (d[1], d[0]) };
            if ray.1 > 0 && !rays.contains(&ray) {
                rays.push(ray);
            }
        }
    }
    rays.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    rays
}

/// One marker per entry at `(free coordinate, height)`, the cone's
/// boundary rays and a legend. Only 2-dimensional scans can be drawn.
pub fn render_svg(scan: &ScanReport, style: &PlotStyle) -> Result<Vec<u8>> {
    let cone = &scan.config.cone;
    if cone.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: cone.dim(),
        });
    }
    style.check()?;
    let hi_idx = scan.config.height_index;
    let free_idx = 1 - hi_idx;
    let bound = scan.config.bound.max(1) as f64;
    let rays = boundary_rays(cone.ineqs(), hi_idx);

    let (y0, y1) = style.y_range.unwrap_or((0.0, bound));
    let (x0, x1) = style.x_range.unwrap_or_else(|| {
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        for &(a, b) in &rays {
            let x = a as f64 / b as f64 * y1;
            lo = lo.min(x);
            hi = hi.max(x);
        }
        (lo.floor() - 1.0, hi.ceil() + 1.0)
    });
    let s = style.scale;
    let pad = 40.0;
    let legend_h = 70.0;
    let width = (x1 - x0) * s + 2.0 * pad;
    let height = (y1 - y0) * s + 2.0 * pad + legend_h;
    let px = |x: f64| pad + (x - x0) * s;
    let py = |y: f64| pad + (y1 - y) * s;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{width:.2}" height="{height:.2}" fill="white"/>"#);

    let _ = writeln!(out, r##"<g id="axes" stroke="#999999" stroke-width="1">"##);
    let _ = writeln!(out, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, px(x0), py(0.0f64.max(y0)), px(x1), py(0.0f64.max(y0)));
    if x0 <= 0.0 && 0.0 <= x1 {
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, px(0.0), py(y0), px(0.0), py(y1));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="cone" stroke="black" stroke-width="1.5" fill="none">"#);
    for &(a, b) in &rays {
        let t = y1 / b as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            px(0.0),
            py(0.0),
            px(a as f64 * t),
            py(y1)
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="classes">"#);
    for e in &scan.entries {
        let c = e.alpha().coords();
        let m = style.marker(Category::of(e));
        marker_svg(&mut out, m, px(c[free_idx] as f64), py(c[hi_idx] as f64), style.point_size);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="legend" font-family="sans-serif" font-size="12">"#);
    let ly = height - legend_h + 10.0;
    for (i, c) in [Category::TotallyReal, Category::NotTotallyReal, Category::Error]
        .into_iter()
        .enumerate()
    {
        let m = style.marker(c);
        let y = ly + 20.0 * i as f64;
        marker_svg(&mut out, m, pad, y, style.point_size + 1.0);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, pad + 12.0, y + 4.0, escape(&m.label));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hironaka_rays() {
        let rows = vec![vec![0, 1], vec![-1, 1], vec![1, 1]];
        assert_eq!(boundary_rays(&rows, 1), vec![(-1, 1), (1, 1)]);
        let rows = vec![vec![0, 1], vec![-2, 1], vec![2, 1]];
        assert_eq!(boundary_rays(&rows, 1), vec![(-1, 2), (1, 2)]);
    }

    #[test]
    fn clashing_style_rejected() {
        let mut s = PlotStyle::default();
        s.error.shape = MarkerShape::Circle;
        assert!(s.check().is_err());
    }
}
