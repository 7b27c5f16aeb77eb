//! Static SVG drawing of a hexad on the real conic with selected pascals.
//!
//! The conic `z0 z2 = z1^2` is drawn in the chart `z0 = 1`, where it is the
//! parabola `y = x^2` and `tau(r) = (r, r^2)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::conic::letter_name;
use crate::labels::PascalSymbol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FigureError {
    #[error("hexad parameters must be six distinct finite numbers")]
    BadHexad,
    #[error("no pascal to draw")]
    NoPascals,
}

/// Parameters giving a readable picture of the standard hexagon.
pub const DEFAULT_PARAMS: [f64; 6] = [-1.6, 0.9, -0.5, 1.5, -1.05, 0.35];

const COLOURS: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#117a65"];
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 560.0;

type V3 = [f64; 3];

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn tau(r: f64) -> V3 {
    [1.0, r, r * r]
}

fn affine(p: V3) -> Option<(f64, f64)> {
    let scale = p.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (p[0].abs() > 1e-9 * scale).then(|| (p[1] / p[0], p[2] / p[0]))
}

struct View {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl View {
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.x0) / (self.x1 - self.x0) * WIDTH, (self.y1 - y) / (self.y1 - self.y0) * HEIGHT)
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }

    /// The segment of the line `l0 + l1 x + l2 y = 0` inside the view.
    fn clip(&self, l: V3) -> Option<((f64, f64), (f64, f64))> {
        let mut pts = Vec::new();
        if l[2].abs() > 1e-12 {
            for x in [self.x0, self.x1] {
                pts.push((x, -(l[0] + l[1] * x) / l[2]));
            }
        }
        if l[1].abs() > 1e-12 {
            for y in [self.y0, self.y1] {
                pts.push((-(l[0] + l[2] * y) / l[1], y));
            }
        }
        let eps = 1e-9 * (self.x1 - self.x0 + self.y1 - self.y0);
        pts.retain(|&(x, y)| x >= self.x0 - eps && x <= self.x1 + eps && y >= self.y0 - eps && y <= self.y1 + eps);
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (a.0 - b.0).abs() < eps && (a.1 - b.1).abs() < eps);
        (pts.len() >= 2).then(|| (pts[0], pts[pts.len() - 1]))
    }
}

/// SVG of the conic, the six points, the hexagon edges of the first symbol,
/// and for each symbol its three pascal points and its pascal.
pub fn render_figure(params: &[f64; 6], symbols: &[PascalSymbol]) -> Result<String, FigureError> {
    if params.iter().any(|r| !r.is_finite())
        || (0..6).any(|i| (i + 1..6).any(|j| (params[i] - params[j]).abs() < 1e-9))
    {
        return Err(FigureError::BadHexad);
    }
    if symbols.is_empty() {
        return Err(FigureError::NoPascals);
    }
    let pts: Vec<V3> = params.iter().map(|&r| tau(r)).collect();
    let pascal_pts: Vec<[V3; 3]> = symbols
        .iter()
        .map(|s| s.chord_pairs().map(|((a, b), (c, d))| {
            cross(cross(pts[a as usize], pts[b as usize]), cross(pts[c as usize], pts[d as usize]))
        }))
        .collect();

    let xs = params.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    let ymax = params.iter().fold(0.0f64, |m, r| m.max(r * r));
    let pad = 0.25 * (xs.1 - xs.0);
    let mut view = View { x0: xs.0 - pad, x1: xs.1 + pad, y0: -0.6 * ymax.max(1.0), y1: 1.3 * ymax.max(1.0) };
    for q in pascal_pts.iter().flatten().filter_map(|&q| affine(q)) {
        if q.0.abs() < 4.0 * (xs.1 - xs.0) && q.1.abs() < 4.0 * ymax.max(1.0) {
            view.x0 = view.x0.min(q.0 - 0.2);
            view.x1 = view.x1.max(q.0 + 0.2);
            view.y0 = view.y0.min(q.1 - 0.2);
            view.y1 = view.y1.max(q.1 + 0.2);
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="14">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let n = 400;
    let conic: Vec<String> = (0..=n)
        .filter_map(|i| {
            let x = view.x0 + (view.x1 - view.x0) * i as f64 / n as f64;
            let p = (x, x * x);
            view.contains(p).then(|| {
                let (u, v) = view.map(p);
                format!("{u:.2},{v:.2}")
            })
        })
        .collect();
    let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#222222" stroke-width="2"/>"##, conic.join(" "));

    let first = symbols[0].rows();
    let order = [first[0][0], first[1][1], first[0][2], first[1][0], first[0][1], first[1][2]];
    for k in 0..6 {
        let (a, b) = (order[k] as usize, order[(k + 1) % 6] as usize);
        if let Some((s, t)) = view.clip(cross(pts[a], pts[b])) {
            let ((x1, y1), (x2, y2)) = (view.map(s), view.map(t));
            let _ = writeln!(
                out,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>"##
            );
        }
    }

    for (i, (s, qs)) in symbols.iter().zip(&pascal_pts).enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let line = cross(qs[0], qs[1]);
        let line = if line.iter().all(|x| x.abs() < 1e-12) { cross(qs[0], qs[2]) } else { line };
        if let Some((a, b)) = view.clip(line) {
            let ((x1, y1), (x2, y2)) = (view.map(a), view.map(b));
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{colour}" stroke-width="2"/>"#
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" fill="{colour}">{}</text>"#,
                x2.min(WIDTH - 150.0),
                (y2 - 6.0).clamp(16.0, HEIGHT - 6.0),
                s.to_label()
            );
        }
        for q in qs.iter().filter_map(|&q| affine(q)).filter(|&q| view.contains(q)) {
            let (u, v) = view.map(q);
            let _ = writeln!(out, r#"<circle cx="{u:.2}" cy="{v:.2}" r="4" fill="{colour}"/>"#);
        }
    }

    for (k, &r) in params.iter().enumerate() {
        let (u, v) = view.map((r, r * r));
        let _ = writeln!(out, r##"<circle cx="{u:.2}" cy="{v:.2}" r="5" fill="#000000"/>"##);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, u + 8.0, v - 6.0, letter_name(k as u8));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_is_self_contained() {
        let svg = render_figure(&DEFAULT_PARAMS, &[PascalSymbol::standard()]).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("href") && !svg.contains("url("));
        assert_eq!(svg.matches(r#"r="5""#).count(), 6);
        assert!(svg.contains("k(1,23)"));
    }

    #[test]
    fn pascal_points_are_collinear_in_floats() {
        let pts: Vec<V3> = DEFAULT_PARAMS.iter().map(|&r| tau(r)).collect();
        for s in PascalSymbol::all() {
            let q = s.chord_pairs().map(|((a, b), (c, d))| {
                cross(cross(pts[a as usize], pts[b as usize]), cross(pts[c as usize], pts[d as usize]))
            });
            let det = cross(q[0], q[1]).iter().zip(q[2]).map(|(x, y)| x * y).sum::<f64>();
            let scale: f64 = q.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).product();
            assert!(det.abs() < 1e-9 * scale, "{s}");
        }
    }

    #[test]
    fn rejects_repeated_points() {
        assert_eq!(render_figure(&[0.0, 0.0, 1.0, 2.0, 3.0, 4.0], &[PascalSymbol::standard()]), Err(FigureError::BadHexad));
    }
}
