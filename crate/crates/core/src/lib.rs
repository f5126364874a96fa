//! Verification engine for weak Killing spinors on the left-invariant
//! metrics `X³(K,L,M)` of `S³`.
//!
//! * [`geometry`]: brackets, connection and Ricci curvature of the family.
//! * [`clifford`]: the 2×2 spin representation.
//! * [`wk`]: the WK system, its flatness, WK-numbers and Einstein–Dirac
//!   residuals.
//! * [`moduli`]: the sextic variety in `P²(ℝ)`: root solving, tracing and
//!   export.
//! * [`numerics`]: small dense kernels and tolerances.
//! * [`report`]: versioned JSON run reports.

pub mod clifford;
pub mod geometry;
pub mod moduli;
pub mod numerics;
pub mod parse;
pub mod report;
pub mod wk;

pub use geometry::{curvature, CurvatureData, ModelParams};
pub use numerics::ToleranceConfig;
