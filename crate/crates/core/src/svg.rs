//! Plain SVG 1.1 figures. Exact coordinates are converted to `f64` only here.

use std::fmt::Write as _;

use crate::affine::Point;
use crate::demos::{circumcenter, Triangle, VERTEX_NAMES};
use crate::error::Result;
use crate::quadratic::BilinearForm;

#[derive(Debug, Clone)]
struct Dot {
    label: String,
    at: (f64, f64),
    color: &'static str,
}

#[derive(Debug, Clone)]
struct Segment {
    from: (f64, f64),
    to: (f64, f64),
    color: &'static str,
    dashed: bool,
}

/// A collection of labelled points and segments in the plane.
#[derive(Debug, Clone, Default)]
pub struct Figure {
    dots: Vec<Dot>,
    segments: Vec<Segment>,
}

fn xy(p: &Point) -> (f64, f64) {
    let c = p.coords();
    (
        c.first().map_or(0.0, |x| x.to_f64()),
        c.get(1).map_or(0.0, |y| y.to_f64()),
    )
}

impl Figure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(&mut self, label: &str, p: &Point, color: &'static str) -> &mut Self {
        self.dots.push(Dot {
            label: label.to_string(),
            at: xy(p),
            color,
        });
        self
    }

    pub fn segment(
        &mut self,
        a: &Point,
        b: &Point,
        color: &'static str,
        dashed: bool,
    ) -> &mut Self {
        self.segments.push(Segment {
            from: xy(a),
            to: xy(b),
            color,
            dashed,
        });
        self
    }

    pub fn is_empty(&self) -> bool {
        self.dots.is_empty() && self.segments.is_empty()
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let coords = self
            .dots
            .iter()
            .map(|d| d.at)
            .chain(self.segments.iter().flat_map(|s| [s.from, s.to]))
            .filter(|(x, y)| x.is_finite() && y.is_finite());
        let mut b = (
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        for (x, y) in coords {
            b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
        }
        if !b.0.is_finite() {
            return (-1.0, -1.0, 1.0, 1.0);
        }
        b
    }

    /// Renders with a view box fitted to the content plus a 5% margin. The
    /// y axis points up.
    pub fn render(&self) -> String {
        let (min_x, min_y, max_x, max_y) = self.bounds();
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        let margin = 0.05 * span;
        let (w, h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
        let (vx, vy) = (min_x - margin, -max_y - margin);
        let stroke = span / 300.0;
        let radius = span / 120.0;
        let font = span / 30.0;

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx:.6} {vy:.6} {w:.6} {h:.6}" width="600" height="{:.0}">"#,
            600.0 * h / w
        );
        for s in &self.segments {
            let dash = if s.dashed {
                format!(
                    r#" stroke-dasharray="{:.6} {:.6}""#,
                    4.0 * stroke,
                    3.0 * stroke
                )
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                r#"  <line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{}" stroke-width="{stroke:.6}"{dash}/>"#,
                s.from.0,
                0.0 - s.from.1,
                s.to.0,
                0.0 - s.to.1,
                s.color
            );
        }
        for d in &self.dots {
            let _ = writeln!(
                out,
                r#"  <circle cx="{:.6}" cy="{:.6}" r="{radius:.6}" fill="{}"/>"#,
                d.at.0,
                0.0 - d.at.1,
                d.color
            );
            let _ = writeln!(
                out,
                r#"  <text x="{:.6}" y="{:.6}" font-size="{font:.6}" font-family="sans-serif" fill="{}">{}</text>"#,
                d.at.0 + 1.5 * radius,
                -d.at.1 - 1.5 * radius,
                d.color,
                escape(&d.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Which construction a triangle figure shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleFigure {
    Medians,
    Orthocenter,
    Euler,
}

fn foot(v: &Point, p: &Point, q: &Point, form: &BilinearForm) -> Result<Point> {
    let edge = p.vector_to(q)?;
    let t = form
        .vectors(&p.vector_to(v)?, &edge)?
        .div(&form.vectors(&edge, &edge)?)?;
    p.shift(&edge.scale(&t)?)
}

/// The triangle with its medians, altitudes or Euler line.
pub fn triangle_figure(t: &Triangle, form: &BilinearForm, kind: TriangleFigure) -> Result<Figure> {
    let mut fig = Figure::new();
    let v = t.vertices();
    for i in 0..3 {
        fig.segment(&v[i], &v[(i + 1) % 3], "black", false);
        fig.point(VERTEX_NAMES[i], &v[i], "black");
    }
    let m = t.centroid()?;
    if matches!(kind, TriangleFigure::Medians | TriangleFigure::Euler) {
        for (i, vertex) in v.iter().enumerate() {
            fig.segment(vertex, &t.opposite_midpoint(i)?, "steelblue", true);
        }
        fig.point("M", &m, "steelblue");
    }
    if matches!(kind, TriangleFigure::Orthocenter | TriangleFigure::Euler) {
        let o = circumcenter(t, form)?;
        let h = crate::demos::orthocenter(t, form)?;
        for i in 0..3 {
            let (p, q) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
            let f = foot(&v[i], p, q, form)?;
            fig.segment(&v[i], &f, "darkred", true);
            fig.segment(&f, &h, "darkred", true);
        }
        fig.point("H", &h, "darkred");
        fig.point("O", &o, "darkgreen");
        if kind == TriangleFigure::Euler {
            fig.segment(&h, &o, "purple", false);
        }
    }
    Ok(fig)
}
