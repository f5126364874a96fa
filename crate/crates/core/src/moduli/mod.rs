//! The solution variety `F(K,L,M) = 0` as a curve configuration in `P²(ℝ)`.

mod export;
mod trace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::ModelParams;
use crate::numerics::{real_roots_cubic, CubicCoeffs, RealRoot, RootError};
use crate::wk::variety_f;

pub use export::{read_csv, svg_string, write_csv, write_svg, CsvRow, CSV_HEADER};
pub use trace::{
    arc_step, corner_radius, distance_to_trace, trace_summary, trace_variety, trace_variety_with,
    Endpoint, ModuliBranch, Trace, TraceSummary, CORNERS, MIN_RESOLUTION,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuliError {
    #[error("F(K,·,M) vanishes identically (K = M = 0)")]
    DegenerateInput,
    #[error("K must be non-zero")]
    ZeroK,
    #[error("the zero vector has no projective class")]
    ZeroPoint,
    #[error("non-finite input")]
    NonFinite,
    #[error("resolution {0} is below the minimum {MIN_RESOLUTION}")]
    ResolutionTooCoarse(usize),
    #[error("csv: {0}")]
    Csv(String),
}

/// Coefficients of `F(K,L,M)` as a cubic in `L`.
pub fn cubic_in_l(k: f64, m: f64) -> CubicCoeffs {
    CubicCoeffs::new(
        (k - m) * (k - m) * (k + m),
        2.0 * k * k * m * m + k * m * m * m + k * k * k * m,
        -k * k * m * m * m - k * k * k * m * m,
        -k * k * k * m * m * m,
    )
}

/// Real roots `L` of `F(K,L,M) = 0`, ascending with multiplicities.
pub fn solve_for_l(k: f64, m: f64) -> Result<Vec<RealRoot>, ModuliError> {
    if !k.is_finite() || !m.is_finite() {
        return Err(ModuliError::NonFinite);
    }
    if k == 0.0 && m == 0.0 {
        return Err(ModuliError::DegenerateInput);
    }
    real_roots_cubic(cubic_in_l(k, m)).map_err(|e| match e {
        RootError::IdenticallyZero => ModuliError::DegenerateInput,
        _ => ModuliError::NonFinite,
    })
}

/// The two solutions on `K = M`: `(K(1−√5)/4, K(1+√5)/4)`.
pub fn km_locus(k: f64) -> Result<(f64, f64), ModuliError> {
    if !k.is_finite() {
        return Err(ModuliError::NonFinite);
    }
    if k == 0.0 {
        return Err(ModuliError::ZeroK);
    }
    let r5 = 5f64.sqrt();
    Ok((k * (1.0 - r5) / 4.0, k * (1.0 + r5) / 4.0))
}

/// Unit-norm representative of a point of `P²(ℝ)`, first non-zero
/// coordinate positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint(ModelParams);

impl ProjectivePoint {
    pub fn params(&self) -> ModelParams {
        self.0
    }

    pub fn to_array(&self) -> [f64; 3] {
        self.0.to_array()
    }
}

pub fn canonical_sign(v: [f64; 3]) -> [f64; 3] {
    match v.iter().find(|x| **x != 0.0) {
        Some(x) if *x < 0.0 => [-v[0], -v[1], -v[2]],
        _ => v,
    }
}

pub fn normalize_homothety(p: &ModelParams) -> Result<ProjectivePoint, ModuliError> {
    if p.check_finite().is_err() {
        return Err(ModuliError::NonFinite);
    }
    let n = p.norm();
    if n == 0.0 {
        return Err(ModuliError::ZeroPoint);
    }
    let v = canonical_sign(p.scaled(1.0 / n).to_array());
    Ok(ProjectivePoint(ModelParams::from_array(v)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    OffVariety,
    FlatCorner,
    KmLocus,
    Generic,
}

/// Coarse position of `p` relative to the variety, judged on `p/|p|`.
pub fn classify_point(p: &ModelParams, tol: f64) -> PointClass {
    let Ok(q) = normalize_homothety(p) else {
        return PointClass::OffVariety;
    };
    let v = q.to_array();
    if v.iter().filter(|x| x.abs() < tol).count() >= 2 {
        return PointClass::FlatCorner;
    }
    if variety_f(&q.params()).abs() >= tol {
        return PointClass::OffVariety;
    }
    if (v[0] - v[2]).abs() < tol {
        PointClass::KmLocus
    } else {
        PointClass::Generic
    }
}
