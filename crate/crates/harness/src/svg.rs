//! SVG drawing of planar instances with a tour on top.

use std::fmt::Write;

use anyhow::bail;
use tspn_core::geom::{Hyperplane, Tour};

use crate::io::Instance;
use crate::UsageError;

pub const VIEWPORT: f64 = 1000.0;
pub const MARGIN: f64 = 0.05;

/// World rectangle mapped onto the viewport with a uniform scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Frame {
    fn fit(points: impl IntoIterator<Item = [f64; 2]>) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for a in 0..2 {
                min[a] = min[a].min(p[a]);
                max[a] = max[a].max(p[a]);
            }
        }
        if !min[0].is_finite() {
            return Frame { min: [-1.0, -1.0], max: [1.0, 1.0] };
        }
        // never collapse to a point
        for a in 0..2 {
            if max[a] - min[a] < 1e-9 {
                min[a] -= 1.0;
                max[a] += 1.0;
            }
        }
        Frame { min, max }
    }

    fn scale(&self) -> f64 {
        let span = (self.max[0] - self.min[0]).max(self.max[1] - self.min[1]);
        VIEWPORT * (1.0 - 2.0 * MARGIN) / span
    }

    /// Viewport coordinates, y pointing down.
    pub fn map(&self, p: [f64; 2]) -> [f64; 2] {
        let s = self.scale();
        let m = VIEWPORT * MARGIN;
        [m + (p[0] - self.min[0]) * s, VIEWPORT - m - (p[1] - self.min[1]) * s]
    }

    /// World rectangle covered by the whole viewport.
    fn visible(&self) -> Frame {
        let s = self.scale();
        let m = VIEWPORT * MARGIN / s;
        let span = VIEWPORT / s;
        Frame { min: [self.min[0] - m, self.min[1] - m], max: [self.min[0] - m + span, self.min[1] - m + span] }
    }
}

/// Part of the line `n . x = c` inside `f`, if any.
fn clip_line(h: &Hyperplane<f64>, f: &Frame) -> Option<([f64; 2], [f64; 2])> {
    let (n, c) = (h.normal(), h.offset());
    let (nx, ny) = (n[0], n[1]);
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for x in [f.min[0], f.max[0]] {
        if ny.abs() > 1e-12 {
            let y = (c - nx * x) / ny;
            if y >= f.min[1] - 1e-9 && y <= f.max[1] + 1e-9 {
                pts.push([x, y]);
            }
        }
    }
    for y in [f.min[1], f.max[1]] {
        if nx.abs() > 1e-12 {
            let x = (c - ny * y) / nx;
            if x >= f.min[0] - 1e-9 && x <= f.max[0] + 1e-9 {
                pts.push([x, y]);
            }
        }
    }
    let a = *pts.first()?;
    let b = pts.iter().copied().max_by(|p, q| {
        let dp = (p[0] - a[0]).hypot(p[1] - a[1]);
        let dq = (q[0] - a[0]).hypot(q[1] - a[1]);
        dp.total_cmp(&dq)
    })?;
    Some((a, b))
}

fn xy(v: &[f64]) -> [f64; 2] {
    [v[0], v[1]]
}

pub fn render(instance: &Instance, tour: &Tour<f64>) -> anyhow::Result<String> {
    if instance.dim() != 2 || tour.dim() != 2 {
        bail!(UsageError("SVG output needs a planar instance".into()));
    }
    let tour_pts: Vec<[f64; 2]> = tour.vertices().iter().map(|p| xy(p.coords())).collect();
    let frame = match instance {
        Instance::Disks(disks) => Frame::fit(tour_pts.iter().copied().chain(disks.iter().flat_map(|d| {
            let (c, r) = (d.center(), d.radius());
            [[c[0] - r, c[1] - r], [c[0] + r, c[1] + r]]
        }))),
        Instance::Hyperplanes(planes) => {
            // the tour plus each line's point nearest to the tour centroid
            let k = tour_pts.len() as f64;
            let g = [tour_pts.iter().map(|p| p[0]).sum::<f64>() / k, tour_pts.iter().map(|p| p[1]).sum::<f64>() / k];
            Frame::fit(tour_pts.iter().copied().chain(planes.iter().map(|h| {
                let s = h.normal()[0] * g[0] + h.normal()[1] * g[1] - h.offset();
                [g[0] - s * h.normal()[0], g[1] - s * h.normal()[1]]
            })))
        }
        _ => unreachable!("only planar kinds reach here"),
    };

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{v}" height="{v}" viewBox="0 0 {v} {v}">"#,
        v = VIEWPORT
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    match instance {
        Instance::Disks(disks) => {
            for d in disks {
                let c = frame.map(xy(d.center().coords()));
                let r = d.radius() * frame.scale();
                writeln!(
                    out,
                    r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#4a90d9" fill-opacity="0.15" stroke="#4a90d9"/>"##,
                    c[0], c[1], r
                )?;
            }
        }
        Instance::Hyperplanes(planes) => {
            let vis = frame.visible();
            for h in planes {
                if let Some((a, b)) = clip_line(h, &vis) {
                    let (a, b) = (frame.map(a), frame.map(b));
                    writeln!(
                        out,
                        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#4a90d9"/>"##,
                        a[0], a[1], b[0], b[1]
                    )?;
                }
            }
        }
        _ => unreachable!(),
    }
    let mut d = String::new();
    for (i, p) in tour_pts.iter().enumerate() {
        let q = frame.map(*p);
        write!(d, "{}{:.3},{:.3} ", if i == 0 { "M" } else { "L" }, q[0], q[1])?;
    }
    d.push('Z');
    writeln!(out, r##"<path d="{d}" fill="none" stroke="#d0021b" stroke-width="2"/>"##)?;
    writeln!(out, "</svg>")?;
    Ok(out)
}
