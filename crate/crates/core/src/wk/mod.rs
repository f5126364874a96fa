//! Weak Killing spinors on `X³(K,L,M)` and the Einstein–Dirac check.

pub mod calibration;
mod connection;
mod number;
mod spinor;
mod variety;
mod verify;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use calibration::{
    calibrate_conventions, calibration, conventions, expected_lambda_sign, sasaki_fixture_minus,
    sasaki_fixture_plus, Calibration, CalibrationTrial,
};
pub use connection::{
    defect_matrices, defect_quadratics, integrability_defect, solve_wk_numbers, wk_connection,
    Convention, WkConnection, CLIFFORD_GRADIENT_COEFF, DIMENSION, SCALAR_GRADIENT_COEFF,
};
pub use number::{flat_wk_number, sign_rule, wk_number, SignBranch, WkNumber};
pub use spinor::{
    commutator_loop, dirac_eigen_residual, einstein_dirac_residual, energy_momentum,
    holonomy_probe, integrate_spinor, norm_drift, normalize_spinor, spinor_solution_space,
    PathSegment, SolutionSpace, HOLONOMY_LOOP,
};
pub use variety::{variety_f, variety_grad};
pub use verify::{verify, verify_with, EdReport, FailReason, Verdict};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WkError {
    #[error("scalar curvature vanishes")]
    ZeroScalarCurvature,
    #[error("S/(S² − |Ric|²) = {0} is not positive")]
    NegativeRadicand(f64),
    #[error("sign rule is undefined on M = −K")]
    SignRuleUndefined,
    #[error("the flatness conditions have no common real root")]
    NoCommonRoot,
    #[error("convention calibration failed: {0}")]
    CalibrationFailed(String),
    #[error("WK-number is zero")]
    ZeroLambda,
    #[error("spinor is zero")]
    ZeroSpinor,
    #[error("non-finite input")]
    NonFinite,
}

impl From<GeometryError> for WkError {
    fn from(_: GeometryError) -> Self {
        WkError::NonFinite
    }
}
