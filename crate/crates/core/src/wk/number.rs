use serde::{Deserialize, Serialize};

use super::WkError;
use crate::geometry::{curvature, ModelParams};

/// Which of the two closed-form branches produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignBranch {
    /// `−K < M`
    Plus,
    /// `M < −K`
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WkNumber {
    pub lambda: f64,
    pub branch: SignBranch,
}

/// The closed form as printed: `λ = ± S/(2√2) · √(S/(S² − |Ric|²))`, with
/// `+` when `−K < M` and `−` when `M < −K`, and `|Ric|² = r1² + r2² + r3²`.
///
/// Note: this value does not make the WK connection flat; see
/// [`flat_wk_number`] for the one that does.
pub fn wk_number(p: &ModelParams) -> Result<WkNumber, WkError> {
    closed_form(p, 1.0)
}

/// `λ = ± S/(2√2) · √(S/(S² − 2|Ric|²))`, same branch rule as
/// [`wk_number`]. This is the WK-number for which the connection of the
/// WK system is flat; it agrees with [`super::solve_wk_numbers`] on every
/// point of the variety.
pub fn flat_wk_number(p: &ModelParams) -> Result<WkNumber, WkError> {
    closed_form(p, 2.0)
}

fn closed_form(p: &ModelParams, ricci_weight: f64) -> Result<WkNumber, WkError> {
    p.check_finite()?;
    let c = curvature(p);
    let scale = p.norm();
    if c.scalar.abs() <= 1e-12 * scale * scale || p.is_zero() {
        return Err(WkError::ZeroScalarCurvature);
    }
    let branch = sign_rule(p)?;
    let s = c.scalar;
    let radicand = s / (s * s - ricci_weight * c.ricci_norm_sq);
    if !(radicand > 0.0) || !radicand.is_finite() {
        return Err(WkError::NegativeRadicand(radicand));
    }
    let magnitude = s / (2.0 * 2f64.sqrt()) * radicand.sqrt();
    let lambda = match branch {
        SignBranch::Plus => magnitude,
        SignBranch::Minus => -magnitude,
    };
    Ok(WkNumber { lambda, branch })
}

/// `Plus` for `−K < M`, `Minus` for `M < −K`.
pub fn sign_rule(p: &ModelParams) -> Result<SignBranch, WkError> {
    let gap = p.m + p.k;
    if gap.abs() <= 1e-14 * p.norm() {
        Err(WkError::SignRuleUndefined)
    } else if gap > 0.0 {
        Ok(SignBranch::Plus)
    } else {
        Ok(SignBranch::Minus)
    }
}
