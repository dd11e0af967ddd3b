//! SVG output for samples and curves.

use std::fmt::Write as _;

use clap::ValueEnum;

/// Coordinate frame of written files.
///
/// `Paper` is the frame of the curve formulas: lattice vertex (r, s) sits at
/// ((r − r_min + 1/2)/N, (s − s_min + 1/2)/N) with N the domain's length
/// unit. `Unit` maps the domain's bounding box affinely onto [0, 1]².
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Frame {
    Paper,
    Unit,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::Paper => "paper",
            Frame::Unit => "unit",
        }
    }
}

/// Affine map from paper-frame coordinates to output coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameMap {
    pub frame: Frame,
    /// Domain bounding box in the paper frame: (x0, y0, x1, y1).
    pub bbox: (f64, f64, f64, f64),
}

impl FrameMap {
    pub fn new(frame: Frame, bbox: (f64, f64, f64, f64)) -> Self {
        FrameMap { frame, bbox }
    }

    pub fn apply(&self, p: (f64, f64)) -> (f64, f64) {
        match self.frame {
            Frame::Paper => p,
            Frame::Unit => {
                let (x0, y0, x1, y1) = self.bbox;
                ((p.0 - x0) / (x1 - x0), (p.1 - y0) / (y1 - y0))
            }
        }
    }

    /// Extent of the domain in output coordinates.
    pub fn extent(&self) -> (f64, f64, f64, f64) {
        let (a, b) = (self.apply((self.bbox.0, self.bbox.1)), self.apply((self.bbox.2, self.bbox.3)));
        (a.0, a.1, b.0, b.1)
    }
}

/// Canvas and style of an SVG figure.
#[derive(Clone, Debug)]
pub struct RenderSpec {
    /// Width of the drawing area in px; the height follows the aspect ratio.
    pub size: f64,
    pub margin: f64,
    pub dot_radius: f64,
    pub w5_colour: String,
    pub w6_colour: String,
    pub arc_colour: String,
    pub tangent_colour: String,
    pub map: FrameMap,
}

impl RenderSpec {
    pub fn new(map: FrameMap) -> Self {
        RenderSpec {
            size: 800.0,
            margin: 20.0,
            dot_radius: 1.2,
            w5_colour: "blue".into(),
            w6_colour: "red".into(),
            arc_colour: "gray".into(),
            tangent_colour: "black".into(),
            map,
        }
    }

    fn scale(&self) -> f64 {
        let (x0, _, x1, _) = self.map.extent();
        self.size / (x1 - x0)
    }

    fn height(&self) -> f64 {
        let (_, y0, _, y1) = self.map.extent();
        (y1 - y0) * self.scale()
    }

    /// Output-frame point to pixel coordinates, y pointing down.
    pub fn to_px(&self, p: (f64, f64)) -> (f64, f64) {
        let (x0, _, _, y1) = self.map.extent();
        let s = self.scale();
        (self.margin + (p.0 - x0) * s, self.margin + (y1 - p.1) * s)
    }

    pub fn from_px(&self, px: (f64, f64)) -> (f64, f64) {
        let (x0, _, _, y1) = self.map.extent();
        let s = self.scale();
        ((px.0 - self.margin) / s + x0, y1 - (px.1 - self.margin) / s)
    }
}

/// Paper-frame position of lattice vertex `pos` given the lattice minimum and unit.
pub fn lattice_to_paper(pos: (i32, i32), min: (i32, i32), unit: f64) -> (f64, f64) {
    ((pos.0 - min.0) as f64 / unit + 0.5 / unit, (pos.1 - min.1) as f64 / unit + 0.5 / unit)
}

/// Inverse of [`lattice_to_paper`], rounded to the nearest vertex.
pub fn paper_to_lattice(p: (f64, f64), min: (i32, i32), unit: f64) -> (i32, i32) {
    ((p.0 * unit - 0.5).round() as i32 + min.0, (p.1 * unit - 0.5).round() as i32 + min.1)
}

/// Layers of one figure, all in the paper frame.
#[derive(Clone, Debug, Default)]
pub struct Figure {
    pub title: String,
    pub outline: Vec<Vec<(f64, f64)>>,
    pub w5: Vec<(f64, f64)>,
    pub w6: Vec<(f64, f64)>,
    pub arcs: Vec<Vec<(f64, f64)>>,
    pub tangents: Vec<((f64, f64), (f64, f64))>,
    /// Extra key=value pairs for the metadata block.
    pub meta: Vec<(String, String)>,
}

fn polyline(out: &mut String, spec: &RenderSpec, pts: &[(f64, f64)], attrs: &str) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = spec.to_px(spec.map.apply(p));
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(out, r#"<polyline fill="none" {attrs} points="{}"/>"#, coords.join(" "));
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn svg(fig: &Figure, spec: &RenderSpec) -> String {
    let w = spec.size + 2.0 * spec.margin;
    let h = spec.height() + 2.0 * spec.margin;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&fig.title));
    let (x0, y0, x1, y1) = spec.map.extent();
    let _ = write!(
        out,
        r#"<metadata frame="{}" x0="{x0}" y0="{y0}" x1="{x1}" y1="{y1}" margin="{}" scale="{}""#,
        spec.map.frame.name(),
        spec.margin,
        spec.scale()
    );
    for (k, v) in &fig.meta {
        let _ = write!(out, r#" {}="{}""#, escape(k), escape(v));
    }
    let _ = writeln!(out, "/>");
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for o in &fig.outline {
        polyline(&mut out, spec, o, r#"stroke="black" stroke-width="1""#);
    }
    for (pts, colour, class) in [(&fig.w5, &spec.w5_colour, "w5"), (&fig.w6, &spec.w6_colour, "w6")] {
        let _ = writeln!(out, r#"<g class="{class}" fill="{colour}">"#);
        for &p in pts {
            let (x, y) = spec.to_px(spec.map.apply(p));
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{}"/>"#, spec.dot_radius);
        }
        let _ = writeln!(out, "</g>");
    }
    for a in &fig.arcs {
        let attrs = format!(r#"stroke="{}" stroke-width="2" stroke-opacity="0.8" class="arc""#, spec.arc_colour);
        polyline(&mut out, spec, a, &attrs);
    }
    for &(a, b) in &fig.tangents {
        let attrs = format!(r#"stroke="{}" stroke-width="1.5" stroke-dasharray="6,3" class="tangent""#, spec.tangent_colour);
        polyline(&mut out, spec, &[a, b], &attrs);
    }
    let _ = writeln!(out, "</svg>");
    out
}
