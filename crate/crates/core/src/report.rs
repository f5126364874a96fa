//! Versioned JSON run reports.
//!
//! Floats are written as `{:.16e}` (17 significant digits), so a report
//! parsed and re-serialized is byte-identical.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::geometry::{
    classify, curvature, standard_basis_metric, Classification, CurvatureData, ModelParams,
};
use crate::moduli::TraceSummary;
use crate::numerics::{RealRoot, ToleranceConfig};
use crate::wk::{Convention, EdReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub params: ModelParams,
    pub curvature: CurvatureData,
    pub classification: Classification,
    /// Diagonal of the metric in the standard `so(3)` basis, when defined.
    pub so3_metric: Option<[f64; 3]>,
    pub so3_metric_error: Option<String>,
}

pub fn analyze(p: &ModelParams) -> AnalyzeReport {
    let (so3_metric, so3_metric_error) = match standard_basis_metric(p) {
        Ok(m) => (Some(m.0), None),
        Err(e) => (None, Some(e.to_string())),
    };
    AnalyzeReport {
        params: *p,
        curvature: curvature(p),
        classification: classify(p),
        so3_metric,
        so3_metric_error,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub k: f64,
    pub m: f64,
    pub roots: Vec<RealRoot>,
    /// `F(K, L, M)` at each root.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data")]
pub enum Payload {
    Analyze(AnalyzeReport),
    Verify(EdReport),
    Solve(SolveReport),
    Trace(TraceSummary),
    Sasaki(Vec<EdReport>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub tolerances: ToleranceConfig,
    pub conventions: Option<Convention>,
    pub payload: Payload,
    /// Wall-clock seconds; omitted unless requested so that reports stay
    /// reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_seconds: Option<f64>,
}

impl RunReport {
    pub fn new(
        command: Vec<String>,
        tolerances: ToleranceConfig,
        conventions: Option<Convention>,
        payload: Payload,
    ) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command,
            tolerances,
            conventions,
            payload,
            duration_seconds: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let r: RunReport = serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(ReportError::SchemaVersion(r.schema_version));
        }
        Ok(r)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(String),
    #[error("unsupported schema_version {0}")]
    SchemaVersion(u32),
}

/// Pretty JSON with fixed-width scientific floats.
struct FixedFloats<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("report types serialize without error");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}
