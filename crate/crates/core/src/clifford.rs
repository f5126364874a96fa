//! Complex spin representation in dimension three.
//!
//! Spinors are pairs of complex numbers and Clifford multiplication by the
//! frame vectors is given by three anti-Hermitian 2×2 matrices with
//! `γ_i γ_j + γ_j γ_i = −2 δ_ij`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat2(pub [[Complex64; 2]; 2]);

impl ComplexMat2 {
    pub const ZERO: Self = ComplexMat2([[Complex64::new(0.0, 0.0); 2]; 2]);

    pub const IDENTITY: Self = ComplexMat2([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);

    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        ComplexMat2([[a11, a12], [a21, a22]])
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_complex(Complex64::new(s, 0.0))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        let a = &self.0;
        ComplexMat2([[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let a = &self.0;
        ComplexMat2([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let a = &self.0;
        Spinor([
            a[0][0] * v.0[0] + a[0][1] * v.0[1],
            a[1][0] * v.0[0] + a[1][1] * v.0[1],
        ])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    /// Max-entry distance from being anti-Hermitian.
    pub fn anti_hermitian_defect(&self) -> f64 {
        (*self + self.adjoint()).max_abs()
    }
}

impl Add for ComplexMat2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        ComplexMat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for ComplexMat2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        ComplexMat2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Neg for ComplexMat2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for ComplexMat2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        ComplexMat2(out)
    }
}

/// A spinor value: two complex components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinor(pub [Complex64; 2]);

impl Spinor {
    pub const ZERO: Self = Spinor([Complex64::new(0.0, 0.0); 2]);

    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Spinor([z1, z2])
    }

    pub fn from_real(a: f64, b: f64) -> Self {
        Spinor([Complex64::new(a, 0.0), Complex64::new(b, 0.0)])
    }

    /// Basis spinor `(1,0)` or `(0,1)`.
    pub fn basis(index: usize) -> Self {
        match index {
            0 => Spinor::from_real(1.0, 0.0),
            1 => Spinor::from_real(0.0, 1.0),
            _ => panic!("spinor basis index {index} out of range"),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Spinor([self.0[0] * s, self.0[1] * s])
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Spinor([self.0[0] * s, self.0[1] * s])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl Add for Spinor {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Spinor([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1]])
    }
}

impl Sub for Spinor {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Spinor([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1]])
    }
}

/// Hermitian product, linear in `phi` and conjugate-linear in `psi`.
pub fn pair(phi: &Spinor, psi: &Spinor) -> Complex64 {
    phi.0[0] * psi.0[0].conj() + phi.0[1] * psi.0[1].conj()
}

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// Clifford multiplication by the orthonormal frame `e1, e2, e3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordRep {
    pub gammas: [ComplexMat2; 3],
    pub sign_choice: Sign,
    pub orientation: Sign,
}

fn pauli() -> [ComplexMat2; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        ComplexMat2::new(o, one, one, o),
        ComplexMat2::new(o, -i, i, o),
        ComplexMat2::new(one, o, o, -one),
    ]
}

/// `γ_k = sign_choice · i·σ_k`, with `γ1` and `γ2` exchanged whenever that
/// is needed to make `γ1γ2γ3 = orientation · Id`.
pub fn build_rep(sign_choice: Sign, orientation: Sign) -> CliffordRep {
    let i = Complex64::new(0.0, 1.0);
    let s = sign_choice.value();
    let [s1, s2, s3] = pauli();
    let mut gammas = [
        s1.scale_complex(i * s),
        s2.scale_complex(i * s),
        s3.scale_complex(i * s),
    ];
    // (iσ1)(iσ2)(iσ3) = +Id, and flipping every γ flips the volume element.
    if sign_choice != orientation {
        gammas.swap(0, 1);
    }
    CliffordRep {
        gammas,
        sign_choice,
        orientation,
    }
}

impl CliffordRep {
    pub fn gamma(&self, index: usize) -> &ComplexMat2 {
        &self.gammas[index]
    }

    /// `Σ v_k γ_k`.
    pub fn clifford_of_vector(&self, v: [f64; 3]) -> ComplexMat2 {
        self.gammas
            .iter()
            .zip(v)
            .fold(ComplexMat2::ZERO, |acc, (g, c)| acc + g.scale(c))
    }

    pub fn volume_element(&self) -> ComplexMat2 {
        self.gammas[0] * self.gammas[1] * self.gammas[2]
    }
}
