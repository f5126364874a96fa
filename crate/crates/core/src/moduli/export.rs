//! CSV and SVG renderings of a trace.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::trace::{Trace, CORNERS};
use super::ModuliError;
use crate::geometry::{curvature, ModelParams};
use crate::parse::parse_real;
use crate::wk::{flat_wk_number, variety_f};

pub const CSV_HEADER: [&str; 8] = [
    "branch_id",
    "point_index",
    "K",
    "L",
    "M",
    "F_residual",
    "S",
    "lambda",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub branch_id: usize,
    pub point_index: usize,
    pub params: ModelParams,
    pub f_residual: f64,
    pub scalar: f64,
    /// Flat WK-number, absent where it is undefined.
    pub lambda: Option<f64>,
}

impl CsvRow {
    pub fn at(branch_id: usize, point_index: usize, p: &ModelParams) -> Self {
        CsvRow {
            branch_id,
            point_index,
            params: *p,
            f_residual: variety_f(p),
            scalar: curvature(p).scalar,
            lambda: flat_wk_number(p).ok().map(|n| n.lambda),
        }
    }
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: impl std::fmt::Display) -> ModuliError {
    ModuliError::Csv(e.to_string())
}

pub fn write_csv<W: Write>(trace: &Trace, out: W) -> Result<usize, ModuliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    let mut rows = 0;
    for b in &trace.branches {
        for (i, p) in b.points.iter().enumerate() {
            let r = CsvRow::at(b.id, i, p);
            w.write_record([
                r.branch_id.to_string(),
                r.point_index.to_string(),
                sci(p.k),
                sci(p.l),
                sci(p.m),
                sci(r.f_residual),
                sci(r.scalar),
                r.lambda.map(sci).unwrap_or_default(),
            ])
            .map_err(csv_err)?;
            rows += 1;
        }
    }
    w.flush().map_err(csv_err)?;
    Ok(rows)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, ModuliError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_err)?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(ModuliError::Csv(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != CSV_HEADER.len() {
            return Err(ModuliError::Csv(format!("expected 8 fields, got {}", rec.len())));
        }
        let int = |i: usize| rec[i].trim().parse::<usize>().map_err(csv_err);
        let real = |i: usize| parse_real(&rec[i]).map_err(csv_err);
        rows.push(CsvRow {
            branch_id: int(0)?,
            point_index: int(1)?,
            params: ModelParams::new(real(2)?, real(3)?, real(4)?),
            f_residual: real(5)?,
            scalar: real(6)?,
            lambda: if rec[7].trim().is_empty() {
                None
            } else {
                Some(real(7)?)
            },
        });
    }
    Ok(rows)
}

const SIZE: f64 = 1000.0;
const RADIUS: f64 = 450.0;

/// Orthographic view of the hemisphere facing `(1,1,1)/√3`.
fn project(p: [f64; 3]) -> (f64, f64, bool) {
    let s3 = 3f64.sqrt();
    let n = [1.0 / s3, 1.0 / s3, 1.0 / s3];
    let flip = p[0] * n[0] + p[1] * n[1] + p[2] * n[2] < 0.0;
    let q = if flip { [-p[0], -p[1], -p[2]] } else { p };
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let x = (q[0] - q[1]) / s2;
    let y = (2.0 * q[2] - q[0] - q[1]) / s6;
    (SIZE / 2.0 + RADIUS * x, SIZE / 2.0 - RADIUS * y, flip)
}

pub fn svg_string(trace: &Trace) -> String {
    let mut s = String::new();
    let c = SIZE / 2.0;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000" width="1000" height="1000">"#
    );
    let _ = writeln!(s, r#"<rect width="1000" height="1000" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<circle cx="{c:.3}" cy="{c:.3}" r="{RADIUS:.3}" fill="none" stroke="gray" stroke-width="1"/>"#
    );
    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
    for b in &trace.branches {
        let colour = palette[b.id % palette.len()];
        // The antipodal fold splits a branch where it crosses the horizon.
        let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut last_flip = None;
        for p in &b.points {
            let (x, y, flip) = project(p.to_array());
            if last_flip != Some(flip) {
                runs.push(Vec::new());
                last_flip = Some(flip);
            }
            runs.last_mut().expect("run pushed above").push((x, y));
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            let pts: Vec<String> = run.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            let _ = writeln!(
                s,
                r#"<polyline data-branch="{}" fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
                b.id,
                pts.join(" ")
            );
        }
    }
    for (k, label) in ["[1:0:0]", "[0:1:0]", "[0:0:1]"].iter().enumerate() {
        let (x, y, _) = project(CORNERS[k]);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="6" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="22">{label}</text>"#,
            x + 10.0,
            y - 10.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg<W: Write>(trace: &Trace, mut out: W) -> std::io::Result<()> {
    out.write_all(svg_string(trace).as_bytes())
}
