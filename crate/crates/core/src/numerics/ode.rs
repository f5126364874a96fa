use crate::clifford::{ComplexMat2, Spinor};

/// One classical fourth-order Runge–Kutta step for `ψ' = f·ψ`.
pub fn rk4_step(f: &ComplexMat2, psi: &Spinor, h: f64) -> Spinor {
    let k1 = f.apply(psi);
    let k2 = f.apply(&(*psi + k1.scale(0.5 * h)));
    let k3 = f.apply(&(*psi + k2.scale(0.5 * h)));
    let k4 = f.apply(&(*psi + k3.scale(h)));
    let incr = k1 + k2.scale(2.0) + k3.scale(2.0) + k4;
    *psi + incr.scale(h / 6.0)
}
