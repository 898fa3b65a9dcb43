//! 800×800 SVG plots of planar convex sets over a unit-disc grid.

use std::fmt::Write;

use pinchwork::numrange::geometry::convex_hull;
use pinchwork::C64;

const SIZE: f64 = 800.0;

pub struct Plot {
    extent: f64,
    body: String,
}

impl Plot {
    /// Plot showing at least the closed disc of radius `extent`.
    pub fn new(extent: f64) -> Self {
        let extent = if extent.is_finite() { extent.max(1.25) } else { 1.25 };
        let mut plot = Self {
            extent,
            body: String::new(),
        };
        plot.grid();
        plot
    }

    fn map(&self, z: C64) -> (f64, f64) {
        let s = SIZE / (2.0 * self.extent);
        (SIZE / 2.0 + z.re * s, SIZE / 2.0 - z.im * s)
    }

    fn radius_px(&self, r: f64) -> f64 {
        r * SIZE / (2.0 * self.extent)
    }

    fn grid(&mut self) {
        let (cx, cy) = self.map(C64::new(0.0, 0.0));
        for k in 1..=4 {
            let r = self.radius_px(0.25 * k as f64);
            let stroke = if k == 4 { "#888" } else { "#ddd" };
            let _ = writeln!(
                self.body,
                r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="{stroke}"/>"#
            );
        }
        let _ = writeln!(self.body, r##"<line x1="0" y1="{cy:.3}" x2="{SIZE}" y2="{cy:.3}" stroke="#ddd"/>"##);
        let _ = writeln!(self.body, r##"<line x1="{cx:.3}" y1="0" x2="{cx:.3}" y2="{SIZE}" stroke="#ddd"/>"##);
    }

    /// Convex hull of `points`; degenerate hulls become a segment or a marker.
    pub fn hull(&mut self, points: &[C64], color: &str) {
        let idx = convex_hull(points);
        let verts: Vec<(f64, f64)> = idx.iter().map(|&i| self.map(points[i])).collect();
        match verts.len() {
            0 => {}
            1 => {
                let (x, y) = verts[0];
                let _ = writeln!(self.body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}"/>"#);
            }
            2 => {
                let ((x1, y1), (x2, y2)) = (verts[0], verts[1]);
                let _ = writeln!(
                    self.body,
                    r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{color}" stroke-width="2"/>"#
                );
            }
            _ => {
                let pts: Vec<String> = verts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                let _ = writeln!(
                    self.body,
                    r#"<polygon points="{}" fill="{color}" fill-opacity="0.2" stroke="{color}" stroke-width="1.5"/>"#,
                    pts.join(" ")
                );
            }
        }
    }

    pub fn disc(&mut self, radius: f64, color: &str) {
        let (cx, cy) = self.map(C64::new(0.0, 0.0));
        let r = self.radius_px(radius);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="{color}" stroke-dasharray="6 4"/>"#
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
             <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Smallest plot extent showing every point with some room.
pub fn extent_for(points: &[C64]) -> f64 {
    1.1 * points.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
