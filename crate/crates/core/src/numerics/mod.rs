//! Small numerical kernels shared by the geometry, spinor and moduli code.

mod hermitian;
mod ode;
mod roots;
mod tolerance;

pub use hermitian::{hermitian_eigen, HermitianEigen};
pub use ode::rk4_step;
pub use roots::{
    common_real_roots, real_roots_cubic, real_roots_quadratic, CubicCoeffs, RealRoot, RootError,
    DEGENERATE_DEGREE_TOL,
};
pub use tolerance::{ToleranceConfig, ToleranceError};
