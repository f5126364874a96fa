use serde::{Deserialize, Serialize};

use super::calibration::calibration;
use super::connection::{integrability_defect, solve_wk_numbers, wk_connection};
use super::number::{flat_wk_number, wk_number, WkNumber};
use super::spinor::{
    dirac_eigen_residual, einstein_dirac_residual, energy_momentum, holonomy_probe,
    integrate_spinor, norm_drift, normalize_spinor, spinor_solution_space, PathSegment,
    HOLONOMY_LOOP,
};
use super::variety::variety_f;
use super::WkError;
use crate::clifford::{Sign, Spinor};
use crate::geometry::{classify, curvature, Classification, ModelParams};
use crate::numerics::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FailReason {
    NonFinite,
    ZeroParameters,
    ZeroScalarCurvature,
    SignRuleUndefined,
    OffVariety,
    Calibration(String),
    NoWkNumber,
    MultipleWkNumbers(usize),
    NotFlat,
    SolutionSpaceDeficient(usize),
    EinsteinDiracResidual,
    DiracResidual,
    NormDrift,
    Holonomy,
}

/// Outcome of the full verification pipeline at one parameter point.
///
/// Residuals are measured at the homothety-normalized point `p/|p|`;
/// `lambda*` fields are quoted at the scale of `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdReport {
    pub params: ModelParams,
    pub normalized: Option<ModelParams>,
    pub classification: Option<Classification>,
    pub scalar_curvature: Option<f64>,
    pub ricci: Option<[f64; 3]>,
    /// `|F(p)|` at the given scale.
    pub variety_residual: Option<f64>,
    /// `|F(p/|p|)|`.
    pub variety_residual_normalized: Option<f64>,
    /// The closed form as printed, with its branch.
    pub lambda_theorem: Option<WkNumber>,
    pub lambda_theorem_error: Option<String>,
    /// `±S/(2√2)·√(S/(S² − 2|Ric|²))`.
    pub lambda_flat_formula: Option<f64>,
    /// Every flat WK-number found by the quadratic solver.
    pub lambda_solved: Vec<f64>,
    /// WK-number used to build the spinor.
    pub lambda: Option<f64>,
    pub integrability_defect: Option<f64>,
    pub spinor_space_dim: usize,
    /// Diagonal of `T_ψ` for the normalized spinor.
    pub energy_momentum: Option<[f64; 3]>,
    pub einstein_dirac_residual: Option<f64>,
    pub ed_sign: Option<Sign>,
    pub dirac_residual: Option<f64>,
    pub norm_drift: Option<f64>,
    pub holonomy_defect: Option<f64>,
    pub verdict: Verdict,
    pub reasons: Vec<FailReason>,
    pub notes: Vec<String>,
}

impl EdReport {
    fn empty(p: &ModelParams) -> Self {
        EdReport {
            params: *p,
            normalized: None,
            classification: None,
            scalar_curvature: None,
            ricci: None,
            variety_residual: None,
            variety_residual_normalized: None,
            lambda_theorem: None,
            lambda_theorem_error: None,
            lambda_flat_formula: None,
            lambda_solved: Vec::new(),
            lambda: None,
            integrability_defect: None,
            spinor_space_dim: 0,
            energy_momentum: None,
            einstein_dirac_residual: None,
            ed_sign: None,
            dirac_residual: None,
            norm_drift: None,
            holonomy_defect: None,
            verdict: Verdict::Fail,
            reasons: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fail(mut self, reason: FailReason) -> Self {
        self.reasons.push(reason);
        self.verdict = Verdict::Fail;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn verify(p: &ModelParams) -> EdReport {
    verify_with(p, &ToleranceConfig::default())
}

pub fn verify_with(p: &ModelParams, tol: &ToleranceConfig) -> EdReport {
    let mut report = EdReport::empty(p);
    if p.check_finite().is_err() {
        return report.fail(FailReason::NonFinite);
    }
    if p.is_zero() {
        return report.fail(FailReason::ZeroParameters);
    }
    // Raw-scale quantities can overflow for huge inputs; they are then left
    // out, and everything else is computed at p/|p|.
    let c = curvature(p);
    report.scalar_curvature = finite(c.scalar);
    report.ricci = c.ricci.iter().all(|r| r.is_finite()).then_some(c.ricci);
    report.variety_residual = finite(variety_f(p).abs());

    let scale = p.norm();
    let unit = p.scaled(1.0 / scale);
    let cu = curvature(&unit);
    report.classification = Some(classify(&unit));
    report.normalized = Some(unit);
    let f_unit = variety_f(&unit).abs();
    report.variety_residual_normalized = Some(f_unit);

    match wk_number(&unit) {
        Ok(n) if (n.lambda * scale).is_finite() => {
            report.lambda_theorem = Some(WkNumber {
                lambda: n.lambda * scale,
                ..n
            })
        }
        Ok(_) => report.lambda_theorem_error = Some("overflow".into()),
        Err(e) => report.lambda_theorem_error = Some(e.to_string()),
    }
    report.lambda_flat_formula = flat_wk_number(&unit)
        .ok()
        .and_then(|n| finite(n.lambda * scale));

    if cu.scalar.abs() <= 1e-12 {
        return report.fail(FailReason::ZeroScalarCurvature);
    }
    if (unit.k + unit.m).abs() <= 1e-14 {
        report.reasons.push(FailReason::SignRuleUndefined);
    }
    if !(f_unit < tol.residual_tol) {
        report.reasons.push(FailReason::OffVariety);
    }
    let pole = cu.scalar * cu.scalar - 2.0 * cu.ricci_norm_sq;
    if pole.abs() < 1e-8 {
        report
            .notes
            .push(format!("near a pole of the WK-number: S² − 2|Ric|² = {pole:e}"));
    }

    let cal = match calibration() {
        Ok(cal) => cal,
        Err(e) => return report.fail(FailReason::Calibration(e.to_string())),
    };
    let conv = cal.convention;
    let rep = conv.rep();

    let solved = match solve_wk_numbers(&unit, &rep, &conv, tol.root_cluster_tol) {
        Ok(v) => v,
        Err(WkError::ZeroScalarCurvature) => return report.fail(FailReason::ZeroScalarCurvature),
        Err(_) => return report.fail(FailReason::NoWkNumber),
    };
    report.lambda_solved = solved.iter().filter_map(|l| finite(l * scale)).collect();
    if solved.len() > 1 {
        report.reasons.push(FailReason::MultipleWkNumbers(solved.len()));
    }

    // Pick the flattest candidate.
    let mut best: Option<(f64, f64)> = None;
    for &lam in &solved {
        if let Ok(w) = wk_connection(&unit, lam, &rep, &conv) {
            let d = integrability_defect(&w, &cu);
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((lam, d));
            }
        }
    }
    let Some((lambda_unit, defect)) = best else {
        return report.fail(FailReason::NoWkNumber);
    };
    report.lambda = finite(lambda_unit * scale);
    report.integrability_defect = Some(defect);
    if !(defect < tol.defect_tol) {
        report.reasons.push(FailReason::NotFlat);
    }

    if let Some(theorem) = report.lambda_theorem {
        let lam = lambda_unit * scale;
        if (theorem.lambda - lam).abs() > 1e-8 * lam.abs().max(1.0) {
            report.notes.push(format!(
                "printed closed form gives λ = {:.10}, flat value is λ = {:.10} (ratio {:.10})",
                theorem.lambda,
                lam,
                lam / theorem.lambda
            ));
        }
    } else if let Some(err) = &report.lambda_theorem_error {
        report.notes.push(format!("printed closed form undefined: {err}"));
    }

    let w = wk_connection(&unit, lambda_unit, &rep, &conv)
        .expect("connection was built above with the same inputs");
    let space = spinor_solution_space(&w, &cu, tol.defect_tol);
    report.spinor_space_dim = space.dimension;
    if space.dimension != 2 {
        report
            .reasons
            .push(FailReason::SolutionSpaceDeficient(space.dimension));
    }
    let psi_star = space.basis.first().copied().unwrap_or(Spinor::basis(0));

    match normalize_spinor(&psi_star, cu.scalar, lambda_unit) {
        Ok(psi) => {
            let t = energy_momentum(&w, &psi, &rep);
            report.energy_momentum = Some([t[0][0], t[1][1], t[2][2]]);
            let (ed, sign) = einstein_dirac_residual(&cu, &t);
            report.einstein_dirac_residual = Some(ed);
            report.ed_sign = Some(sign);
            if !(ed < tol.residual_tol) {
                report.reasons.push(FailReason::EinsteinDiracResidual);
            }
            let dirac = dirac_eigen_residual(&w, &psi, &rep);
            report.dirac_residual = Some(dirac);
            if !(dirac < tol.residual_tol) {
                report.reasons.push(FailReason::DiracResidual);
            }

            let third = 1.0 / 3.0;
            let path = [
                PathSegment::frame(0, Sign::Plus, third),
                PathSegment::frame(1, Sign::Plus, third),
                PathSegment::frame(2, Sign::Plus, third),
            ];
            let traj = integrate_spinor(&w, &path, psi, tol.ode_step);
            let drift = norm_drift(&traj, 1.0);
            report.norm_drift = Some(drift);
            if !(drift < tol.residual_tol) {
                report.reasons.push(FailReason::NormDrift);
            }
        }
        Err(_) => report.reasons.push(FailReason::DiracResidual),
    }

    let holonomy = holonomy_probe(
        &w,
        &cu,
        &[Spinor::basis(0), Spinor::basis(1)],
        HOLONOMY_LOOP,
        tol.ode_step,
    );
    report.holonomy_defect = Some(holonomy);
    if !(holonomy < tol.holonomy_tol) {
        report.reasons.push(FailReason::Holonomy);
    }

    report.verdict = if report.reasons.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report
}
