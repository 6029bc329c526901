//! Deterministic SVG 1.1 output for polyominoes and Schröder paths.

use std::fmt::Write;

use crate::error::Result;
use crate::polyomino::{cti_bounce, itc_bounce, SawtoothPolyomino};
use crate::schroder::{antidiagonal_bounce_walk, schroder_peaks, Point, SchroderWord};
use crate::toppling::Mode;

/// Side of a lattice cell in pixels.
pub const CELL: i64 = 32;
const MARGIN: i64 = 24;

struct Canvas {
    height: i64,
    body: String,
}

impl Canvas {
    fn new(height: i64) -> Self {
        Self {
            height,
            body: String::new(),
        }
    }

    fn xy(&self, p: Point) -> (i64, i64) {
        (MARGIN + p.0 * CELL, MARGIN + (self.height - p.1) * CELL)
    }

    fn points(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.xy(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn grid(&mut self, width: i64) {
        for x in 0..=width {
            let (a, b) = (self.xy((x, 0)), self.xy((x, self.height)));
            let _ = writeln!(
                self.body,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#dddddd" stroke-width="1"/>"##,
                a.0, a.1, b.0, b.1
            );
        }
        for y in 0..=self.height {
            let (a, b) = (self.xy((0, y)), self.xy((width, y)));
            let _ = writeln!(
                self.body,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#dddddd" stroke-width="1"/>"##,
                a.0, a.1, b.0, b.1
            );
        }
    }

    fn polyline(&mut self, pts: &[Point], color: &str, width: u32, dashed: bool) {
        let dash = if dashed {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"{dash}/>"#,
            self.points(pts)
        );
    }

    fn dot(&mut self, p: Point, color: &str) {
        let (x, y) = self.xy(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x}" cy="{y}" r="5" fill="{color}"/>"#
        );
    }

    fn text(&mut self, p: (i64, i64), s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{s}</text>"#,
            p.0, p.1
        );
    }

    fn finish(self, width: i64, title: &str) -> String {
        let w = 2 * MARGIN + width * CELL;
        let h = 2 * MARGIN + self.height * CELL;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <title>{title}</title>\n\
             <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// A polyomino with optional CTI (red) and ITC (blue) bounce overlays.
pub fn render_polyomino_svg(poly: &SawtoothPolyomino, overlays: &[Mode]) -> Result<String> {
    let width = poly.n as i64 + 1;
    let upper = poly.upper_points();
    let height = upper.iter().map(|p| p.1).max().unwrap_or(0);
    let mut cv = Canvas::new(height);
    cv.grid(width);
    let mut outline = upper.clone();
    outline.extend(poly.lower_points().into_iter().rev());
    let _ = writeln!(
        cv.body,
        r##"<polygon points="{}" fill="#f2e6c9" stroke="none"/>"##,
        cv.points(&outline)
    );
    cv.polyline(&upper, "#000000", 2, false);
    cv.polyline(&poly.lower_points(), "#000000", 2, false);
    for mode in overlays {
        let (rec, color) = match mode {
            Mode::Cti => (cti_bounce(poly)?, "#d62728"),
            Mode::Itc => (itc_bounce(poly)?, "#1f77b4"),
        };
        cv.polyline(&rec.path, color, 2, true);
        let sizes = rec
            .sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let y = MARGIN / 2 + if *mode == Mode::Cti { 0 } else { 12 };
        cv.text((MARGIN, y.max(10)), &format!("{mode} ({sizes})"));
    }
    Ok(cv.finish(width, &format!("sawtooth polyomino {}x{}", width, poly.d)))
}

/// A Schröder path in its square grid with the diagonal, optional peaks
/// (red dots) and the bounce path (dashed).
pub fn render_path_svg(w: &SchroderWord, peaks: bool, bounce: bool) -> String {
    let size = (w.n() + w.d()) as i64;
    let mut cv = Canvas::new(size);
    cv.grid(size);
    let (a, b) = (cv.xy((0, 0)), cv.xy((size, size)));
    let _ = writeln!(
        cv.body,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888888" stroke-width="1"/>"##,
        a.0, a.1, b.0, b.1
    );
    cv.polyline(&w.points(), "#000000", 3, false);
    if bounce {
        let (_, path) = antidiagonal_bounce_walk(w);
        cv.polyline(&path, "#1f77b4", 2, true);
    }
    if peaks {
        for p in schroder_peaks(w) {
            cv.dot(p, "#d62728");
        }
    }
    cv.finish(size, &format!("Schroder path {w}"))
}
