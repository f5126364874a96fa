use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ToleranceError {
    #[error("tolerance `{name}` must be positive and finite, got {value}")]
    NotPositive { name: &'static str, value: f64 },
}

/// Every threshold used by the verification pipeline. Values are quoted for
/// homothety-normalized parameters (`|(K,L,M)| = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Max-entry bound on the flatness defect of the WK connection.
    pub defect_tol: f64,
    /// Bound on Einstein-Dirac, Dirac and variety residuals.
    pub residual_tol: f64,
    /// Width used to cluster common roots of the defect quadratics.
    pub root_cluster_tol: f64,
    /// Fixed step of the spinor transport integrator.
    pub ode_step: f64,
    /// Newton target for traced variety points.
    pub trace_polish_tol: f64,
    /// Bound on the commutator-loop holonomy probe (see `wk::holonomy_probe`).
    pub holonomy_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            defect_tol: 1e-10,
            residual_tol: 1e-9,
            root_cluster_tol: 1e-8,
            ode_step: 1e-3,
            trace_polish_tol: 1e-10,
            holonomy_tol: 1e-5,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), ToleranceError> {
        let fields = [
            ("defect_tol", self.defect_tol),
            ("residual_tol", self.residual_tol),
            ("root_cluster_tol", self.root_cluster_tol),
            ("ode_step", self.ode_step),
            ("trace_polish_tol", self.trace_polish_tol),
            ("holonomy_tol", self.holonomy_tol),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(ToleranceError::NotPositive { name, value });
            }
        }
        Ok(())
    }
}
