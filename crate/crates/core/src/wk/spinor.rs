use serde::{Deserialize, Serialize};

use super::connection::{defect_matrices, integrability_defect, WkConnection, CYCLIC};
use super::WkError;
use crate::clifford::{pair, CliffordRep, ComplexMat2, Sign, Spinor};
use crate::geometry::CurvatureData;
use crate::numerics::{hermitian_eigen, rk4_step};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpace {
    pub dimension: usize,
    /// Orthonormal initial values `ψ(identity)`.
    pub basis: Vec<Spinor>,
}

/// Dimension of the space of WK-spinors, read off the flatness defects.
///
/// Flat systems (defect below `tol`) have the full two-dimensional space.
/// Otherwise the common kernel of the three defect matrices bounds the
/// solutions; its dimension (0 or 1) comes from the smallest eigenvalue of
/// `Σ D_k† D_k`.
pub fn spinor_solution_space(w: &WkConnection, c: &CurvatureData, tol: f64) -> SolutionSpace {
    if integrability_defect(w, c) < tol {
        return SolutionSpace {
            dimension: 2,
            basis: vec![Spinor::basis(0), Spinor::basis(1)],
        };
    }
    let gram = defect_matrices(w, c)
        .iter()
        .fold(ComplexMat2::ZERO, |acc, d| acc + d.adjoint() * *d);
    let eig = hermitian_eigen(&gram);
    if eig.values[0] <= 3.0 * tol * tol {
        SolutionSpace {
            dimension: 1,
            basis: vec![eig.vectors[0]],
        }
    } else {
        SolutionSpace {
            dimension: 0,
            basis: Vec::new(),
        }
    }
}

/// Straight piece of a path: flow along the left-invariant field
/// `Σ direction_k e_k` for `duration`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSegment {
    pub direction: [f64; 3],
    pub duration: f64,
}

impl PathSegment {
    /// Flow along `±e_axis`.
    pub fn frame(axis: usize, sign: Sign, duration: f64) -> Self {
        let mut direction = [0.0; 3];
        direction[axis] = sign.value();
        PathSegment {
            direction,
            duration,
        }
    }
}

fn generator(w: &WkConnection, direction: [f64; 3]) -> ComplexMat2 {
    w.system
        .iter()
        .zip(direction)
        .fold(ComplexMat2::ZERO, |acc, (c, d)| acc + c.scale(d))
}

/// Transports `psi0` along `path` by solving `dψ/dt = C_v ψ` with fixed
/// steps no longer than `step`. The trajectory holds the initial value and
/// the value after every step.
pub fn integrate_spinor(w: &WkConnection, path: &[PathSegment], psi0: Spinor, step: f64) -> Vec<Spinor> {
    let mut out = vec![psi0];
    let mut psi = psi0;
    for seg in path {
        if !(seg.duration > 0.0) {
            continue;
        }
        let f = generator(w, seg.direction);
        let n = (seg.duration / step).ceil().max(1.0) as usize;
        let h = seg.duration / n as f64;
        for _ in 0..n {
            psi = rk4_step(&f, &psi, h);
            out.push(psi);
        }
    }
    out
}

/// Commutator loop in the `(e_i, e_j)` plane with side `t`, closed to third
/// order in `t` by a final flow along `−Z`,
/// `Z = t²[e_i,e_j] + t³/2 [e_i+e_j, [e_i,e_j]]`.
pub fn commutator_loop(c: &CurvatureData, i: usize, j: usize, t: f64) -> Vec<PathSegment> {
    let (_, _, k) = CYCLIC
        .iter()
        .copied()
        .find(|&(a, b, _)| a == i && b == j)
        .expect("(i, j) must be a cyclic pair");
    let b = c.brackets;
    let mut z = [0.0; 3];
    z[k] = t * t * b[k];
    // [e_i + e_j, e_k] = b_i e_i − b_j e_j for cyclic (i, j, k)
    z[i] += 0.5 * t * t * t * b[k] * b[i];
    z[j] -= 0.5 * t * t * t * b[k] * b[j];
    vec![
        PathSegment::frame(i, Sign::Plus, t),
        PathSegment::frame(j, Sign::Plus, t),
        PathSegment::frame(i, Sign::Minus, t),
        PathSegment::frame(j, Sign::Minus, t),
        PathSegment {
            direction: z.map(|x| -x),
            duration: 1.0,
        },
    ]
}

/// Side length of the probe loops.
pub const HOLONOMY_LOOP: f64 = 1e-3;

/// `max ‖ψ_end − ψ0‖ / (t² ‖ψ0‖)` over the three commutator loops and the
/// given starting spinors. Estimates the curvature `|D_k ψ0|` of the system
/// up to `O(t²)`; vanishes to that order when the system is flat.
pub fn holonomy_probe(w: &WkConnection, c: &CurvatureData, starts: &[Spinor], t: f64, step: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for &(i, j, _) in CYCLIC.iter() {
        let path = commutator_loop(c, i, j, t);
        for psi0 in starts {
            let traj = integrate_spinor(w, &path, *psi0, step);
            let end = traj.last().copied().unwrap_or(*psi0);
            worst = worst.max((end - *psi0).norm() / (t * t * psi0.norm()));
        }
    }
    worst
}

/// Largest `|‖ψ(t)‖² − ‖ψ0‖²| / ‖ψ0‖²` over a trajectory, per unit of path
/// length.
pub fn norm_drift(trajectory: &[Spinor], path_length: f64) -> f64 {
    let Some(first) = trajectory.first() else {
        return 0.0;
    };
    let base = first.norm_sqr();
    if base == 0.0 {
        return 0.0;
    }
    trajectory
        .iter()
        .map(|s| (s.norm_sqr() - base).abs() / base)
        .fold(0.0, f64::max)
        / path_length.max(f64::MIN_POSITIVE)
}

/// `T_ij = Re (γ_i A_j ψ + γ_j A_i ψ, ψ)` for a WK solution value `ψ`.
pub fn energy_momentum(w: &WkConnection, psi: &Spinor, rep: &CliffordRep) -> [[f64; 3]; 3] {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let v = (rep.gammas[i] * w.algebraic[j]).apply(psi)
                + (rep.gammas[j] * w.algebraic[i]).apply(psi);
            t[i][j] = pair(&v, psi).re;
        }
    }
    t
}

/// Rescales a WK-spinor to `‖ψ‖² = (n−2)|S|/|λ|` with `n = 3`.
pub fn normalize_spinor(psi_star: &Spinor, scalar: f64, lambda: f64) -> Result<Spinor, WkError> {
    if lambda == 0.0 {
        return Err(WkError::ZeroLambda);
    }
    let n2 = psi_star.norm_sqr();
    if n2 == 0.0 {
        return Err(WkError::ZeroSpinor);
    }
    let factor = ((super::connection::DIMENSION - 2.0) * scalar.abs() / (lambda.abs() * n2)).sqrt();
    Ok(psi_star.scale(factor))
}

/// `max |E ∓ ¼T|` for the better of the two signs, `E = Ric − ½S·g`.
pub fn einstein_dirac_residual(c: &CurvatureData, t: &[[f64; 3]; 3]) -> (f64, Sign) {
    let residual = |sign: Sign| -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { c.ricci[i] - 0.5 * c.scalar } else { 0.0 };
                worst = worst.max((e - sign.value() * 0.25 * t[i][j]).abs());
            }
        }
        worst
    };
    let plus = residual(Sign::Plus);
    let minus = residual(Sign::Minus);
    if plus <= minus {
        (plus, Sign::Plus)
    } else {
        (minus, Sign::Minus)
    }
}

/// `‖Σ γ_i A_i ψ − λψ‖`.
pub fn dirac_eigen_residual(w: &WkConnection, psi: &Spinor, rep: &CliffordRep) -> f64 {
    let d = (0..3).fold(ComplexMat2::ZERO, |acc, i| acc + rep.gammas[i] * w.algebraic[i]);
    (d.apply(psi) - psi.scale(w.lambda)).norm()
}
