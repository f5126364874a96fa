//! Test-only oracles that share no code with the library.

#![allow(dead_code)]

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    /// Exact image of `f64` coefficients given highest degree first.
    pub fn from_f64_high_to_low(coeffs: &[f64]) -> Poly {
        let mut v: Vec<BigRational> = coeffs
            .iter()
            .rev()
            .map(|c| BigRational::from_float(*c).expect("finite coefficient"))
            .collect();
        trim(&mut v);
        Poly(v)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        let mut v: Vec<BigRational> = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        trim(&mut v);
        Poly(v)
    }

    fn rem(&self, d: &Poly) -> Poly {
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lead = d.0[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r[r.len() - 1].clone() / lead.clone();
            for (i, c) in d.0.iter().enumerate() {
                r[i + shift] = r[i + shift].clone() - q.clone() * c;
            }
            r.pop();
            trim(&mut r);
        }
        Poly(r)
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub struct Sturm(Vec<Poly>);

impl Sturm {
    pub fn new(p: &Poly) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative()];
        while chain.last().unwrap().degree().map_or(false, |d| d > 0) {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.0.is_empty() {
                break;
            }
            chain.push(r);
        }
        chain.retain(|q| !q.0.is_empty());
        Sturm(chain)
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let s: Vec<i8> = signs.filter(|s| *s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn sign(x: &BigRational) -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn changes_at(&self, x: &BigRational) -> usize {
        Self::changes(self.0.iter().map(|q| Self::sign(&q.eval(x))))
    }

    fn changes_at_infinity(&self, positive: bool) -> usize {
        Self::changes(self.0.iter().map(|q| {
            let lead = Self::sign(q.0.last().unwrap());
            let odd = q.degree().unwrap() % 2 == 1;
            if !positive && odd {
                -lead
            } else {
                lead
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.changes_at_infinity(false) - self.changes_at_infinity(true)
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.changes_at(a) - self.changes_at(b)
    }
}

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Bisection on Sturm counts down to width `width`; returns midpoints of
/// intervals each holding one distinct root.
pub fn isolate_roots(p: &Poly, width: f64) -> Vec<f64> {
    let sturm = Sturm::new(p);
    // Cauchy bound.
    let lead = p.0.last().unwrap().abs();
    let bound = p.0[..p.0.len() - 1]
        .iter()
        .fold(BigRational::zero(), |m, c| {
            let r = c.abs() / lead.clone();
            if r > m {
                r
            } else {
                m
            }
        })
        + BigRational::one();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    let w = rat(width);
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count_in(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && b.clone() - a.clone() < w {
            let mid = (a + b) / BigRational::from_integer(BigInt::from(2));
            out.push(to_f64(&mid));
            continue;
        }
        let mid = (a.clone() + b.clone()) / BigRational::from_integer(BigInt::from(2));
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.total_cmp(y));
    out
}

fn to_f64(x: &BigRational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().expect("representable")
}

/// Independent Koszul computation of the Ricci diagonal from structure
/// constants `[e_i, e_j] = Σ_k c[i][j][k] e_k` of an orthonormal frame.
pub fn koszul_ricci(c: &[[[f64; 3]; 3]; 3]) -> [[f64; 3]; 3] {
    // nabla[x][y][z] = g(∇_{e_x} e_y, e_z)
    let mut nabla = [[[0.0; 3]; 3]; 3];
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                nabla[x][y][z] = 0.5 * (c[x][y][z] - c[y][z][x] + c[z][x][y]);
            }
        }
    }
    // ∇_X applied to a constant-coefficient vector field.
    let cov = |x: usize, v: [f64; 3]| -> [f64; 3] {
        let mut out = [0.0; 3];
        for (y, vy) in v.iter().enumerate() {
            for z in 0..3 {
                out[z] += vy * nabla[x][y][z];
            }
        }
        out
    };
    let mut ric = [[0.0; 3]; 3];
    for y in 0..3 {
        for z in 0..3 {
            let mut sum = 0.0;
            for i in 0..3 {
                let mut ez = [0.0; 3];
                ez[z] = 1.0;
                let a = cov(y, ez);
                let a = cov(i, a);
                let b = cov(i, ez);
                let b = cov(y, b);
                let mut r = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
                for k in 0..3 {
                    let t = cov(k, ez);
                    for m in 0..3 {
                        r[m] -= c[i][y][k] * t[m];
                    }
                }
                sum += r[i];
            }
            ric[y][z] = sum;
        }
    }
    ric
}

/// Structure constants of the frame with `[e2,e3] = (K−L)e1`,
/// `[e3,e1] = (M+K)e2`, `[e1,e2] = (M−L)e3`.
pub fn structure_constants(k: f64, l: f64, m: f64) -> [[[f64; 3]; 3]; 3] {
    let mut c = [[[0.0; 3]; 3]; 3];
    let b = [k - l, m + k, m - l];
    for (i, j, t) in [(1usize, 2usize, 0usize), (2, 0, 1), (0, 1, 2)] {
        c[i][j][t] = b[t];
        c[j][i][t] = -b[t];
    }
    c
}

/// `√x` to about `2^-200` relative, by Newton's method in exact arithmetic.
pub fn rational_sqrt(x: &BigRational) -> BigRational {
    use num::ToPrimitive;
    let mut y = rat(x.to_f64().expect("representable").sqrt());
    let two = BigRational::from_integer(BigInt::from(2));
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 200u32);
    for _ in 0..8 {
        let next = (y.clone() + x.clone() / y.clone()) / two.clone();
        // Keep denominators bounded.
        let scale = BigInt::one() << 256u32;
        let next = BigRational::new((next * BigRational::from_integer(scale.clone())).round().to_integer(), scale);
        let done = (next.clone() - y.clone()).abs() < eps;
        y = next;
        if done {
            break;
        }
    }
    y
}

pub fn to_f64_pub(x: &BigRational) -> f64 {
    to_f64(x)
}
