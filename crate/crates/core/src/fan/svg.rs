use std::fmt::Write;

use super::geometry::{dot, normalize, Geometry};
use super::Fan;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SvgOptions {
    /// Side of the square viewBox.
    pub size: f64,
    /// Segments per great-circle arc.
    pub segments: usize,
    pub title: String,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 800.0,
            segments: 256,
            title: String::new(),
        }
    }
}

struct Projection {
    pole: Vec<f64>,
    e1: Vec<f64>,
    e2: Vec<f64>,
}

impl Projection {
    /// Projects from `pole`; the antipode goes to the origin.
    fn new(pole: Vec<f64>) -> Self {
        let axis = (0..3).min_by(|&a, &b| pole[a].abs().total_cmp(&pole[b].abs())).unwrap();
        let mut e = vec![0.0; 3];
        e[axis] = 1.0;
        let e1 = normalize(&sub_multiple(&e, &pole, dot(&e, &pole)));
        let e2 = cross(&pole, &e1);
        Projection { pole, e1, e2 }
    }

    fn project(&self, x: &[f64]) -> (f64, f64) {
        let x = normalize(x);
        let d = 1.0 - dot(&x, &self.pole);
        (dot(&x, &self.e1) / d, dot(&x, &self.e2) / d)
    }
}

fn sub_multiple(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - t * y).collect()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Rays of a cone in cyclic order around its centroid.
fn cyclic_rays(rays: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let sum: Vec<f64> = (0..3).map(|k| rays.iter().map(|r| r[k]).sum()).collect();
    let m = normalize(&sum);
    let frame = Projection::new(m.iter().map(|c| -c).collect());
    let mut out = rays.to_vec();
    out.sort_by(|a, b| {
        let (ax, ay) = (dot(a, &frame.e1), dot(a, &frame.e2));
        let (bx, by) = (dot(b, &frame.e1), dot(b, &frame.e2));
        ay.atan2(ax).total_cmp(&by.atan2(bx))
    });
    out
}

fn centroid(rays: &[Vec<f64>]) -> Vec<f64> {
    normalize(&(0..3).map(|k| rays.iter().map(|r| r[k]).sum()).collect::<Vec<f64>>())
}

/// Stereographic picture of a rank-3 fan on the unit sphere, seen from the
/// side of the identity cone.
///
/// Each cone becomes a `<g class="cell">` holding its boundary path and its
/// label at the projected spherical centroid.
pub fn render_stereographic_svg(fan: &Fan, geometry: &Geometry, options: &SvgOptions) -> Result<String> {
    if fan.rank != 3 {
        return Err(Error::RankUnsupported(fan.rank));
    }
    let pole = normalize(&geometry.rho().iter().map(|c| -c).collect::<Vec<f64>>());
    let proj = Projection::new(pole);

    let outlines: Vec<Vec<(f64, f64)>> = fan
        .cones
        .iter()
        .map(|cone| {
            let rays = cyclic_rays(&cone.rays);
            let mut pts = Vec::with_capacity(rays.len() * options.segments);
            for (k, a) in rays.iter().enumerate() {
                let b = &rays[(k + 1) % rays.len()];
                for step in 0..options.segments {
                    let t = step as f64 / options.segments as f64;
                    let x: Vec<f64> = a.iter().zip(b).map(|(p, q)| (1.0 - t) * p + t * q).collect();
                    pts.push(proj.project(&x));
                }
            }
            pts
        })
        .collect();

    let extent = outlines
        .iter()
        .flatten()
        .map(|&(x, y)| x.abs().max(y.abs()))
        .fold(0.0f64, f64::max)
        * 1.05;
    let half = options.size / 2.0;
    let scale = half / extent;
    let to_view = |(x, y): (f64, f64)| (half + x * scale, half - y * scale);

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {0} {0}\" width=\"{0}\" height=\"{0}\">",
        options.size
    )
    .unwrap();
    if !options.title.is_empty() {
        writeln!(out, "  <title>{}</title>", escape(&options.title)).unwrap();
    }
    writeln!(
        out,
        "  <rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>",
        options.size
    )
    .unwrap();
    for (cone, outline) in fan.cones.iter().zip(&outlines) {
        let mut d = String::new();
        for (k, &p) in outline.iter().enumerate() {
            let (x, y) = to_view(p);
            write!(d, "{}{:.2} {:.2} ", if k == 0 { "M" } else { "L" }, x, y).unwrap();
        }
        d.push('Z');
        let (lx, ly) = to_view(proj.project(&centroid(&cone.rays)));
        let margin = 24.0;
        let lx = lx.clamp(margin, options.size - margin);
        let ly = ly.clamp(margin, options.size - margin);
        writeln!(out, "  <g class=\"cell\" data-label=\"{}\">", escape(&cone.label)).unwrap();
        writeln!(
            out,
            "    <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
        )
        .unwrap();
        writeln!(
            out,
            "    <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            escape(&cone.label)
        )
        .unwrap();
        writeln!(out, "  </g>").unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
