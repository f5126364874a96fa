//! The WK equation as a constant-coefficient first-order system.
//!
//! In the orthonormal frame the weak Killing equation in dimension `n`
//! reads
//!
//! ```text
//! ∇_X ψ = n/(2(n−1)) dS(X) ψ + 2λ/((n−2)S) Ric(X)·ψ − λ/(n−2) X·ψ
//!         + 1/(2(n−1)S) X·dS·ψ
//! ```
//!
//! On `X³(K,L,M)` the Ricci eigenvalues are constant, so `dS = 0` and with
//! `n = 3` we get `∇_{e_i} ψ = A_i ψ`, `A_i = λ(2 r_i/S − 1) γ_i`. Writing the
//! spin connection as `∇_{e_i} = e_i + Γ_i` turns this into `e_i(ψ) = C_i ψ`
//! with `C_i = A_i − Γ_i`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::WkError;
use crate::clifford::{CliffordRep, ComplexMat2, Sign};
use crate::geometry::{curvature, CurvatureData, ModelParams};
use crate::numerics::{common_real_roots, RootError};

pub const DIMENSION: f64 = 3.0;
/// Coefficient of `dS(X)ψ`; multiplies zero on this family.
pub const SCALAR_GRADIENT_COEFF: f64 = DIMENSION / (2.0 * (DIMENSION - 1.0));
/// Coefficient of `X·dS·ψ / S`; multiplies zero on this family.
pub const CLIFFORD_GRADIENT_COEFF: f64 = 1.0 / (2.0 * (DIMENSION - 1.0));

/// Sign choices the spin representation does not pin down by itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    /// Global sign of the Clifford matrices.
    pub clifford_sign: Sign,
    /// `s` in `Γ_k = s·½ Σ_{i<j} ω_ij(e_k) γ_iγ_j`.
    pub spin_sign: Sign,
    /// `γ1γ2γ3 = orientation · Id`.
    pub orientation: Sign,
}

impl Convention {
    pub fn rep(&self) -> CliffordRep {
        crate::clifford::build_rep(self.clifford_sign, self.orientation)
    }

    /// All eight combinations, in a fixed order.
    pub fn all() -> Vec<Convention> {
        let mut out = Vec::with_capacity(8);
        for clifford_sign in Sign::BOTH {
            for spin_sign in Sign::BOTH {
                for orientation in Sign::BOTH {
                    out.push(Convention {
                        clifford_sign,
                        spin_sign,
                        orientation,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkConnection {
    pub lambda: f64,
    /// `A_i = λ(2 r_i/S − 1) γ_i`.
    pub algebraic: [ComplexMat2; 3],
    /// Spin connection terms `Γ_i`.
    pub spin: [ComplexMat2; 3],
    /// `C_i = A_i − Γ_i`.
    pub system: [ComplexMat2; 3],
    pub convention: Convention,
}

/// `(2 r_i/S − 1)` for each frame direction.
pub(crate) fn ricci_weights(c: &CurvatureData) -> [f64; 3] {
    c.ricci.map(|r| 2.0 * r / c.scalar - 1.0)
}

pub(crate) fn spin_terms(p: &ModelParams, rep: &CliffordRep, conv: &Convention) -> [ComplexMat2; 3] {
    let g = &rep.gammas;
    let half = 0.5 * conv.spin_sign.value();
    [
        (g[1] * g[2]).scale(half * p.m),
        (g[0] * g[2]).scale(half * p.l),
        (g[0] * g[1]).scale(half * p.k),
    ]
}

pub fn wk_connection(
    p: &ModelParams,
    lambda: f64,
    rep: &CliffordRep,
    conv: &Convention,
) -> Result<WkConnection, WkError> {
    p.check_finite()?;
    let c = curvature(p);
    let algebraic = if lambda == 0.0 {
        [ComplexMat2::ZERO; 3]
    } else {
        if c.scalar == 0.0 {
            return Err(WkError::ZeroScalarCurvature);
        }
        let w = ricci_weights(&c);
        [0, 1, 2].map(|i| rep.gammas[i].scale(lambda * w[i]))
    };
    let spin = spin_terms(p, rep, conv);
    let system = [0, 1, 2].map(|i| algebraic[i] - spin[i]);
    Ok(WkConnection {
        lambda,
        algebraic,
        spin,
        system,
        convention: *conv,
    })
}

/// Index triples `(i, j, k)` with `[e_i, e_j] = b_k e_k`.
pub(crate) const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 0), (2, 0, 1), (0, 1, 2)];

/// `D_k = [C_i, C_j] + b_k C_k` for the three cyclic triples, indexed by `k`.
pub fn defect_matrices(w: &WkConnection, c: &CurvatureData) -> [ComplexMat2; 3] {
    let s = &w.system;
    let mut out = [ComplexMat2::ZERO; 3];
    for (i, j, k) in CYCLIC {
        out[k] = s[i].commutator(&s[j]) + s[k].scale(c.brackets[k]);
    }
    out
}

/// Largest entry of the three flatness defects; zero iff the system has a
/// two-dimensional space of solutions on the simply connected group.
pub fn integrability_defect(w: &WkConnection, c: &CurvatureData) -> f64 {
    defect_matrices(w, c)
        .iter()
        .map(ComplexMat2::max_abs)
        .fold(0.0, f64::max)
}

/// Each defect entry as a real quadratic in `λ`, high-to-low coefficients.
/// Returns 24 triples: 3 matrices × 4 entries × (re, im).
pub fn defect_quadratics(p: &ModelParams, rep: &CliffordRep, conv: &Convention) -> Result<Vec<[f64; 3]>, WkError> {
    let c = curvature(p);
    if c.scalar == 0.0 {
        return Err(WkError::ZeroScalarCurvature);
    }
    let w = ricci_weights(&c);
    let unit = [0, 1, 2].map(|i| rep.gammas[i].scale(w[i]));
    let spin = spin_terms(p, rep, conv);
    let b = c.brackets;
    let mut out = Vec::with_capacity(24);
    for (i, j, k) in CYCLIC {
        let quad = unit[i].commutator(&unit[j]);
        let lin = unit[k].scale(b[k]) - unit[i].commutator(&spin[j]) - spin[i].commutator(&unit[j]);
        let cons = spin[i].commutator(&spin[j]) - spin[k].scale(b[k]);
        for r in 0..2 {
            for col in 0..2 {
                let (q, l, z): (Complex64, Complex64, Complex64) =
                    (quad.0[r][col], lin.0[r][col], cons.0[r][col]);
                out.push([q.re, l.re, z.re]);
                out.push([q.im, l.im, z.im]);
            }
        }
    }
    Ok(out)
}

fn sum_of_squares_derivatives(polys: &[[f64; 3]], x: f64) -> (f64, f64) {
    // g = Σ q², g' = Σ 2 q q', g'' = Σ 2 (q'² + q q'')
    polys.iter().fold((0.0, 0.0), |(d1, d2), [a, b, c]| {
        let q = (a * x + b) * x + c;
        let dq = 2.0 * a * x + b;
        (d1 + 2.0 * q * dq, d2 + 2.0 * (dq * dq + q * 2.0 * a))
    })
}

/// Every `λ` for which the WK system at `p` is flat.
///
/// The defect entries are quadratics in `λ`; their common real roots are
/// found at the homothety-normalized point `p/|p|` with clustering width
/// `cluster_tol`, refined by Newton's method on the summed squares, and
/// scaled back by `|p|`.
pub fn solve_wk_numbers(
    p: &ModelParams,
    rep: &CliffordRep,
    conv: &Convention,
    cluster_tol: f64,
) -> Result<Vec<f64>, WkError> {
    p.check_finite()?;
    let scale = p.norm();
    if scale == 0.0 {
        return Err(WkError::ZeroScalarCurvature);
    }
    let unit = p.scaled(1.0 / scale);
    let c = curvature(&unit);
    if c.scalar.abs() <= 1e-12 {
        return Err(WkError::ZeroScalarCurvature);
    }
    let polys = defect_quadratics(&unit, rep, conv)?;
    let centers = common_real_roots(&polys, cluster_tol).map_err(|e| match e {
        RootError::NoCommonRoot | RootError::IdenticallyZero => WkError::NoCommonRoot,
        RootError::NonFinite => WkError::NonFinite,
    })?;
    Ok(centers
        .into_iter()
        .map(|mut x| {
            for _ in 0..4 {
                let (d1, d2) = sum_of_squares_derivatives(&polys, x);
                if d2 <= 0.0 || d1 == 0.0 {
                    break;
                }
                let step = d1 / d2;
                if !(step.abs() < cluster_tol) {
                    break;
                }
                x -= step;
            }
            x * scale
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_rep;
    use crate::geometry::koszul_connection;

    const S5: f64 = 2.23606797749979;

    fn canonical() -> (CliffordRep, Convention) {
        let conv = Convention {
            clifford_sign: Sign::Plus,
            spin_sign: Sign::Plus,
            orientation: Sign::Plus,
        };
        (conv.rep(), conv)
    }

    #[test]
    fn zero_everything_gives_zero_system() {
        let (rep, conv) = canonical();
        let p = ModelParams::new(0.0, 0.0, 0.0);
        let w = wk_connection(&p, 0.0, &rep, &conv).unwrap();
        assert!(w.system.iter().all(|m| m.max_abs() == 0.0));
        assert_eq!(integrability_defect(&w, &curvature(&p)), 0.0);
    }

    #[test]
    fn zero_scalar_curvature_is_rejected() {
        let (rep, conv) = canonical();
        let p = ModelParams::new(1.0, 0.0, 0.0);
        assert_eq!(
            wk_connection(&p, 0.5, &rep, &conv),
            Err(WkError::ZeroScalarCurvature)
        );
    }

    #[test]
    fn algebraic_terms_are_anti_hermitian() {
        for conv in Convention::all() {
            let rep = conv.rep();
            let w = wk_connection(&ModelParams::new(0.3, -0.8, 1.1), 0.77, &rep, &conv).unwrap();
            for m in w.algebraic.iter().chain(w.spin.iter()).chain(w.system.iter()) {
                assert!(m.anti_hermitian_defect() < 1e-15);
            }
            for i in 0..3 {
                assert_eq!(w.system[i], w.algebraic[i] - w.spin[i]);
            }
        }
    }

    #[test]
    fn spin_terms_match_koszul_assembly() {
        let p = ModelParams::new(0.4, 1.3, -0.6);
        let lc = koszul_connection(&p);
        for conv in Convention::all() {
            let rep = conv.rep();
            let closed = spin_terms(&p, &rep, &conv);
            for (k, closed_k) in closed.iter().enumerate() {
                let mut sum = ComplexMat2::ZERO;
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    sum = sum + (rep.gammas[i] * rep.gammas[j]).scale(lc.omega(i, j, k));
                }
                let assembled = sum.scale(0.5 * conv.spin_sign.value());
                assert!((assembled - *closed_k).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sasaki_point_is_flat_at_solved_lambda_only() {
        let (rep, conv) = canonical();
        let p = ModelParams::new(1.0, (1.0 - S5) / 4.0, 1.0);
        let c = curvature(&p);
        let lambdas = solve_wk_numbers(&p, &rep, &conv, 1e-8).unwrap();
        assert_eq!(lambdas.len(), 1);
        assert!((lambdas[0] - (2.0 + S5) / 2.0).abs() < 1e-12);
        let w = wk_connection(&p, lambdas[0], &rep, &conv).unwrap();
        assert!(integrability_defect(&w, &c) < 1e-13);
        let bumped = wk_connection(&p, lambdas[0] + 0.1, &rep, &conv).unwrap();
        assert!(integrability_defect(&bumped, &c) > 1e-3);
    }

    #[test]
    fn quadratics_reproduce_defects() {
        let (rep, conv) = canonical();
        let p = ModelParams::new(0.9, -0.2, 0.5);
        let c = curvature(&p);
        let polys = defect_quadratics(&p, &rep, &conv).unwrap();
        for lambda in [-1.3, 0.0, 0.4, 2.5] {
            let w = wk_connection(&p, lambda, &rep, &conv).unwrap();
            let d = defect_matrices(&w, &c);
            let mut idx = 0;
            for m in d.iter() {
                for r in 0..2 {
                    for col in 0..2 {
                        let [a, b, cc] = polys[idx];
                        assert!(((a * lambda + b) * lambda + cc - m.0[r][col].re).abs() < 1e-13);
                        let [a, b, cc] = polys[idx + 1];
                        assert!(((a * lambda + b) * lambda + cc - m.0[r][col].im).abs() < 1e-13);
                        idx += 2;
                    }
                }
            }
        }
    }

    #[test]
    fn round_sphere_carries_killing_spinors() {
        let (rep, conv) = canonical();
        let lambdas = solve_wk_numbers(&ModelParams::new(1.0, -1.0, 1.0), &rep, &conv, 1e-8).unwrap();
        // Killing spinors of both signs.
        assert_eq!(lambdas.len(), 2, "{lambdas:?}");
        assert!((lambdas[0] + 1.5).abs() < 1e-12);
        assert!((lambdas[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn off_variety_generic_point_has_no_root() {
        let (rep, conv) = canonical();
        assert_eq!(
            solve_wk_numbers(&ModelParams::new(1.0, 0.3, 0.7), &rep, &conv, 1e-8),
            Err(WkError::NoCommonRoot)
        );
    }

    #[test]
    fn homothety_scales_lambda() {
        let (rep, conv) = canonical();
        let p = ModelParams::new(1.0, (1.0 - S5) / 4.0, 1.0);
        let base = solve_wk_numbers(&p, &rep, &conv, 1e-8).unwrap()[0];
        let doubled = solve_wk_numbers(&p.scaled(2.0), &rep, &conv, 1e-8).unwrap()[0];
        assert!((doubled - 2.0 * base).abs() < 1e-10 * base.abs());
    }

    #[test]
    fn convention_enumeration_is_complete() {
        let all = Convention::all();
        assert_eq!(all.len(), 8);
        let set: std::collections::HashSet<_> = all.into_iter().collect();
        assert_eq!(set.len(), 8);
        let _ = build_rep(Sign::Plus, Sign::Plus);
    }
}
