//! Curve files, run outputs and plot emission.
//!
//! Curves are stored as UTF-8 JSON:
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "kind": "rational",
//!   "degree": 2,
//!   "points": [[1, 0], [1, 1], [0, 1]],
//!   "weights": [1, 0.7071067811865476, 1]
//! }
//! ```
//!
//! `weights` is required for `"rational"` and must be absent for
//! `"polynomial"`. Numbers are written in shortest round-trip form.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::accuracy::ApproximationReport;
use crate::curves::{BezierCurve, ParametricCurve, RationalBezierCurve};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Rational,
    Polynomial,
}

/// On-disk representation of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub schema_version: String,
    pub kind: CurveKind,
    pub degree: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

/// A validated curve loaded from a [`CurveFile`].
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Rational(RationalBezierCurve),
    Polynomial(BezierCurve),
}

impl Curve {
    pub fn degree(&self) -> usize {
        match self {
            Curve::Rational(c) => c.degree(),
            Curve::Polynomial(c) => c.degree(),
        }
    }

    /// Polynomial curves become unit-weight rational curves.
    pub fn into_rational(self) -> RationalBezierCurve {
        match self {
            Curve::Rational(c) => c,
            Curve::Polynomial(c) => RationalBezierCurve::from_bezier(&c),
        }
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        match self {
            Curve::Rational(c) => c.eval(t),
            Curve::Polynomial(c) => c.eval(t),
        }
    }
}

impl CurveFile {
    pub fn from_rational(curve: &RationalBezierCurve) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            kind: CurveKind::Rational,
            degree: curve.degree(),
            points: curve.control_points().points(),
            weights: Some(curve.weights().to_vec()),
        }
    }

    pub fn from_bezier(curve: &BezierCurve) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            kind: CurveKind::Polynomial,
            degree: curve.degree(),
            points: curve.control_points(),
            weights: None,
        }
    }

    /// Checks the schema and builds the curve; messages name the offending field.
    pub fn validate(&self) -> std::result::Result<Curve, String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "field `schema_version`: unsupported version {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            ));
        }
        if self.points.len() != self.degree + 1 {
            return Err(format!(
                "field `points`: degree {} needs {} points, found {}",
                self.degree,
                self.degree + 1,
                self.points.len()
            ));
        }
        let dim = self.points[0].len();
        if dim == 0 {
            return Err("field `points`: points must have at least one coordinate".to_owned());
        }
        if let Some(i) = self.points.iter().position(|p| p.len() != dim) {
            return Err(format!("field `points[{i}]`: expected {dim} coordinates"));
        }
        match (self.kind, &self.weights) {
            (CurveKind::Rational, None) => Err("field `weights`: required for kind \"rational\"".to_owned()),
            (CurveKind::Polynomial, Some(_)) => {
                Err("field `weights`: not allowed for kind \"polynomial\"".to_owned())
            }
            (CurveKind::Rational, Some(w)) => {
                if w.len() != self.degree + 1 {
                    return Err(format!(
                        "field `weights`: degree {} needs {} weights, found {}",
                        self.degree,
                        self.degree + 1,
                        w.len()
                    ));
                }
                if let Some(i) = w.iter().position(|v| !(*v > 0.0)) {
                    return Err(format!("field `weights[{i}]`: weight {} is not positive", w[i]));
                }
                RationalBezierCurve::new(&self.points, w.clone())
                    .map(Curve::Rational)
                    .map_err(|e| e.to_string())
            }
            (CurveKind::Polynomial, None) => {
                BezierCurve::new(&self.points).map(Curve::Polynomial).map_err(|e| e.to_string())
            }
        }
    }
}

/// Parses and validates curve JSON; `origin` only labels error messages.
pub fn parse_curve(text: &str, origin: &Path) -> Result<Curve> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| Error::Format {
        path: origin.to_owned(),
        message: e.to_string(),
    })?;
    file.validate().map_err(|message| Error::Format { path: origin.to_owned(), message })
}

pub fn read_curve(path: impl AsRef<Path>) -> Result<Curve> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_curve(&text, path)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_curve(path: impl AsRef<Path>, file: &CurveFile) -> Result<()> {
    write_json(path.as_ref(), file)
}

/// Optional artifacts of an approximation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    /// `approx.json`
    Json,
    /// `error_curve.csv`
    Csv,
    /// `curves.svg`
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::invalid(format!("unknown output format `{other}`"))),
        }
    }
}

/// Parses a comma-separated format list; an empty string yields no formats.
pub fn parse_formats(text: &str) -> Result<Vec<OutputFormat>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

/// `t,error` CSV with a header row.
pub fn error_curve_csv(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("t,error\n");
    for (t, e) in samples {
        let _ = writeln!(out, "{t},{e}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub samples: usize,
    pub control_polygons: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { width: 800.0, height: 600.0, samples: 400, control_polygons: false }
    }
}

fn planar(p: &[f64]) -> (f64, f64) {
    (p[0], p.get(1).copied().unwrap_or(0.0))
}

/// Static SVG 1.1 drawing of the source and approximating curves.
pub fn curves_svg(src: &RationalBezierCurve, approx: &BezierCurve, options: SvgOptions) -> String {
    let sample = |c: &dyn ParametricCurve| -> Vec<(f64, f64)> {
        (0..options.samples.max(2))
            .map(|i| planar(&c.point(i as f64 / (options.samples.max(2) - 1) as f64)))
            .collect()
    };
    let source = sample(src);
    let result = sample(approx);
    let src_poly: Vec<(f64, f64)> = src.control_points().points().iter().map(|p| planar(p)).collect();
    let approx_poly: Vec<(f64, f64)> = approx.control_points().iter().map(|p| planar(p)).collect();

    let mut all: Vec<(f64, f64)> = source.iter().chain(&result).copied().collect();
    if options.control_polygons {
        all.extend(src_poly.iter().chain(&approx_poly));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in &all {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    let margin = 30.0;
    let span = ((x1 - x0) / (options.width - 2.0 * margin)).max((y1 - y0) / (options.height - 2.0 * margin));
    let scale = if span > 0.0 { 1.0 / span } else { 1.0 };
    let map = |(x, y): (f64, f64)| (margin + (x - x0) * scale, options.height - margin - (y - y0) * scale);
    let polyline = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|p| {
                let (x, y) = map(*p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = options.width,
        h = options.height
    );
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    if options.control_polygons {
        for (pts, colour) in [(&src_poly, "#9ecae1"), (&approx_poly, "#fcae91")] {
            let _ = writeln!(
                svg,
                r#"  <polyline points="{}" fill="none" stroke="{colour}" stroke-width="1"/>"#,
                polyline(pts)
            );
        }
    }
    let _ = writeln!(
        svg,
        r##"  <polyline id="source" points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        polyline(&source)
    );
    let _ = writeln!(
        svg,
        r##"  <polyline id="approximation" points="{}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 3"/>"##,
        polyline(&result)
    );
    let _ = writeln!(
        svg,
        r##"  <text x="{margin}" y="20" font-family="sans-serif" font-size="12"><tspan fill="#1f77b4">rational degree {}</tspan> <tspan fill="#d62728">polynomial degree {}</tspan></text>"##,
        src.degree(),
        approx.degree()
    );
    svg.push_str("</svg>\n");
    svg
}

/// Writes `report.json` plus the requested artifacts into `out_dir`,
/// returning the paths written.
pub fn write_outputs(
    src: &RationalBezierCurve,
    curve: &BezierCurve,
    report: &ApproximationReport,
    out_dir: impl AsRef<Path>,
    formats: &[OutputFormat],
    svg: SvgOptions,
) -> Result<Vec<PathBuf>> {
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();

    let path = out_dir.join("report.json");
    write_json(&path, report)?;
    written.push(path);

    for format in formats {
        let path = match format {
            OutputFormat::Json => {
                let path = out_dir.join("approx.json");
                write_curve(&path, &CurveFile::from_bezier(curve))?;
                path
            }
            OutputFormat::Csv => {
                let path = out_dir.join("error_curve.csv");
                fs::write(&path, error_curve_csv(&report.samples)).map_err(|e| Error::io(&path, e))?;
                path
            }
            OutputFormat::Svg => {
                let path = out_dir.join("curves.svg");
                fs::write(&path, curves_svg(src, curve, svg)).map_err(|e| Error::io(&path, e))?;
                path
            }
        };
        if !written.contains(&path) {
            written.push(path);
        }
    }
    Ok(written)
}
