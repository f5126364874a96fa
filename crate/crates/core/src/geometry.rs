//! Curvature of the left-invariant metrics `X³(K,L,M)`.
//!
//! Conventions, fixed here once for the whole crate:
//!
//! * `e1, e2, e3` is the orthonormal left-invariant frame, `σ¹, σ², σ³` its
//!   dual coframe.
//! * Connection forms are `ω_ij(X) = g(∇_X e_i, e_j)`. With this reading the
//!   first structure equation is `dσ^i = Σ_j ω_ij ∧ σ^j`, and the connection
//!   `ω_12 = Kσ³, ω_13 = Lσ², ω_23 = Mσ¹` gives
//!   `dσ¹ = (L−K)σ²∧σ³, dσ² = (M+K)σ¹∧σ³, dσ³ = (L−M)σ¹∧σ²`.
//!   (Authors using `dσ^i = −Σ ω_ij ∧ σ^j` see one global sign flip in ω.)
//! * Brackets follow from `dσ^k(e_i,e_j) = −σ^k([e_i,e_j])`:
//!   `[e2,e3] = (K−L)e1, [e3,e1] = (M+K)e2, [e1,e2] = (M−L)e3`.
//! * `R(X,Y) = [∇_X,∇_Y] − ∇_[X,Y]` and `Ric(Y,Z) = tr(X ↦ R(X,Y)Z)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("parameters ({0}, {1}, {2}) do not define a metric in the so(3) chart: a factor |M−L|, |K+M| or |K−L| vanishes")]
    DegenerateMetric(f64, f64, f64),
    #[error("parameter `{0}` is not a finite real number")]
    NonFinite(&'static str),
    #[error("expected three comma- or whitespace-separated numbers, got {0:?}")]
    Malformed(String),
}

/// The triple `(K, L, M)` defining `X³(K,L,M)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: f64,
}

impl ModelParams {
    pub const fn new(k: f64, l: f64, m: f64) -> Self {
        ModelParams { k, l, m }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        ModelParams::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.k, self.l, self.m]
    }

    pub fn norm(&self) -> f64 {
        self.k.hypot(self.l).hypot(self.m)
    }

    pub fn scaled(&self, mu: f64) -> Self {
        ModelParams::new(mu * self.k, mu * self.l, mu * self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0.0 && self.l == 0.0 && self.m == 0.0
    }

    pub fn check_finite(&self) -> Result<(), GeometryError> {
        for (name, v) in [("K", self.k), ("L", self.l), ("M", self.m)] {
            if !v.is_finite() {
                return Err(GeometryError::NonFinite(name));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, L={}, M={})", self.k, self.l, self.m)
    }
}

impl FromStr for ModelParams {
    type Err = GeometryError;

    /// Accepts `"K,L,M"` or `"K L M"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if parts.len() != 3 {
            return Err(GeometryError::Malformed(s.to_string()));
        }
        let mut v = [0.0; 3];
        for (slot, (name, text)) in v.iter_mut().zip(["K", "L", "M"].into_iter().zip(parts)) {
            *slot = crate::parse::parse_real(text)
                .map_err(|_| GeometryError::NonFinite(name))?;
        }
        Ok(ModelParams::from_array(v))
    }
}

/// Curvature data in the orthonormal frame (the metric is the identity there).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureData {
    /// `b` with `[e2,e3] = b1 e1, [e3,e1] = b2 e2, [e1,e2] = b3 e3`.
    pub brackets: [f64; 3],
    /// Principal Ricci curvatures.
    pub ricci: [f64; 3],
    pub scalar: f64,
    pub ricci_norm_sq: f64,
}

/// Coefficients of `dσ¹, dσ², dσ³` against `σ²∧σ³, σ¹∧σ³, σ¹∧σ²`.
pub fn coframe_differentials(p: &ModelParams) -> [f64; 3] {
    [p.l - p.k, p.m + p.k, p.l - p.m]
}

pub fn curvature(p: &ModelParams) -> CurvatureData {
    let (k, l, m) = (p.k, p.l, p.m);
    let ricci = [-2.0 * k * l, 2.0 * k * m, -2.0 * l * m];
    let scalar = ricci[0] + ricci[1] + ricci[2];
    let ricci_norm_sq = ricci.iter().map(|r| r * r).sum();
    CurvatureData {
        brackets: [k - l, m + k, m - l],
        ricci,
        scalar,
        ricci_norm_sq,
    }
}

/// Diagonal of the left-invariant metric in the standard basis of so(3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricDiag(pub [f64; 3]);

pub fn standard_basis_metric(p: &ModelParams) -> Result<MetricDiag, GeometryError> {
    let ml = (p.m - p.l).abs();
    let km = (p.k + p.m).abs();
    let kl = (p.k - p.l).abs();
    let diag = [1.0 / (ml * km), 1.0 / (kl * ml), 1.0 / (kl * km)];
    if ml == 0.0 || km == 0.0 || kl == 0.0 || diag.iter().any(|d| !d.is_finite()) {
        return Err(GeometryError::DegenerateMetric(p.k, p.l, p.m));
    }
    Ok(MetricDiag(diag))
}

/// Levi-Civita connection of a left-invariant metric computed from the
/// brackets alone by the Koszul formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeviCivita {
    /// `christoffel[a][b][c] = g(∇_{e_a} e_b, e_c)`.
    pub christoffel: [[[f64; 3]; 3]; 3],
    structure: [[[f64; 3]; 3]; 3],
}

fn structure_constants(brackets: [f64; 3]) -> [[[f64; 3]; 3]; 3] {
    // [e_i, e_j] = Σ_k c[i][j][k] e_k
    let mut c = [[[0.0; 3]; 3]; 3];
    for (i, j, k) in [(1, 2, 0), (2, 0, 1), (0, 1, 2)] {
        c[i][j][k] = brackets[k];
        c[j][i][k] = -brackets[k];
    }
    c
}

pub fn koszul_connection(p: &ModelParams) -> LeviCivita {
    let c = structure_constants(curvature(p).brackets);
    let mut christoffel = [[[0.0; 3]; 3]; 3];
    // 2 g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y) for left-invariant fields
    for (a, plane) in christoffel.iter_mut().enumerate() {
        for (b, row) in plane.iter_mut().enumerate() {
            for (d, entry) in row.iter_mut().enumerate() {
                *entry = 0.5 * (c[a][b][d] - c[b][d][a] + c[d][a][b]);
            }
        }
    }
    LeviCivita {
        christoffel,
        structure: c,
    }
}

impl LeviCivita {
    /// `ω_ij(e_k)`, zero-based indices.
    pub fn omega(&self, i: usize, j: usize, k: usize) -> f64 {
        self.christoffel[k][i][j]
    }

    fn covariant(&self, x: usize, y: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (b, yb) in y.iter().enumerate() {
            for (c, o) in out.iter_mut().enumerate() {
                *o += yb * self.christoffel[x][b][c];
            }
        }
        out
    }

    /// Ricci tensor assembled from the curvature operator of this connection.
    pub fn ricci_matrix(&self) -> [[f64; 3]; 3] {
        let basis = |i: usize| {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            v
        };
        // R(e_a, e_y) e_z
        let riemann = |a: usize, y: usize, z: usize| -> [f64; 3] {
            let ez = basis(z);
            let t1 = {
                let inner = self.covariant(y, ez);
                (0..3).fold([0.0; 3], |acc, c| {
                    let d = self.covariant(a, basis(c));
                    [
                        acc[0] + inner[c] * d[0],
                        acc[1] + inner[c] * d[1],
                        acc[2] + inner[c] * d[2],
                    ]
                })
            };
            let t2 = {
                let inner = self.covariant(a, ez);
                (0..3).fold([0.0; 3], |acc, c| {
                    let d = self.covariant(y, basis(c));
                    [
                        acc[0] + inner[c] * d[0],
                        acc[1] + inner[c] * d[1],
                        acc[2] + inner[c] * d[2],
                    ]
                })
            };
            let t3 = (0..3).fold([0.0; 3], |acc, c| {
                let coef = self.structure[a][y][c];
                let d = self.covariant(c, ez);
                [
                    acc[0] + coef * d[0],
                    acc[1] + coef * d[1],
                    acc[2] + coef * d[2],
                ]
            });
            [
                t1[0] - t2[0] - t3[0],
                t1[1] - t2[1] - t3[1],
                t1[2] - t2[2] - t3[2],
            ]
        };
        let mut ric = [[0.0; 3]; 3];
        for (y, row) in ric.iter_mut().enumerate() {
            for (z, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|a| riemann(a, y, z)[a]).sum();
            }
        }
        ric
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvatureKind {
    Flat,
    Einstein,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarSign {
    Positive,
    Zero,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: CurvatureKind,
    pub scalar_sign: ScalarSign,
}

/// Comparisons are made at `1e−12·|p|²`, the natural scale of the Ricci
/// curvatures.
pub fn classify(p: &ModelParams) -> Classification {
    let c = curvature(p);
    let tol = 1e-12 * p.norm().powi(2);
    let r = c.ricci;
    let kind = if r.iter().all(|x| x.abs() <= tol) {
        CurvatureKind::Flat
    } else if (r[0] - r[1]).abs() <= tol && (r[1] - r[2]).abs() <= tol {
        CurvatureKind::Einstein
    } else {
        CurvatureKind::Generic
    };
    let scalar_sign = if c.scalar.abs() <= tol {
        ScalarSign::Zero
    } else if c.scalar > 0.0 {
        ScalarSign::Positive
    } else {
        ScalarSign::Negative
    };
    Classification { kind, scalar_sign }
}
