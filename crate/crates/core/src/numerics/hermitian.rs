use num_complex::Complex64;

use crate::clifford::{ComplexMat2, Spinor};

/// Eigen-decomposition of a 2×2 Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen {
    pub values: [f64; 2],
    pub vectors: [Spinor; 2],
}

/// Closed-form eigen-decomposition; only the upper triangle and the real
/// parts of the diagonal are read.
pub fn hermitian_eigen(h: &ComplexMat2) -> HermitianEigen {
    let a = h.0[0][0].re;
    let d = h.0[1][1].re;
    let b = h.0[0][1];
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    let values = [mean - radius, mean + radius];
    if b.norm() == 0.0 {
        let (lo, hi) = if a <= d { (0, 1) } else { (1, 0) };
        return HermitianEigen {
            values,
            vectors: [Spinor::basis(lo), Spinor::basis(hi)],
        };
    }
    // (H − μ)v = 0 with v = (b, μ − a) or (μ − d, conj b); pick the better
    // conditioned form for each eigenvalue.
    let vector = |mu: f64| -> Spinor {
        let v1 = Spinor::new(b, Complex64::new(mu - a, 0.0));
        let v2 = Spinor::new(Complex64::new(mu - d, 0.0), b.conj());
        let v = if v1.norm_sqr() >= v2.norm_sqr() { v1 } else { v2 };
        v.scale(1.0 / v.norm())
    };
    HermitianEigen {
        values,
        vectors: [vector(values[0]), vector(values[1])],
    }
}
