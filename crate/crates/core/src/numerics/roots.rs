//! Closed-form real roots of polynomials of degree at most three.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Leading coefficients below this fraction of the largest coefficient are
/// treated as structurally zero and the degree drops.
pub const DEGENERATE_DEGREE_TOL: f64 = 1e-12;

/// Relative window in which a discriminant is read as zero.
const DISCRIMINANT_TOL: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("polynomial has non-finite coefficients")]
    NonFinite,
    #[error("no real root is shared by every polynomial")]
    NoCommonRoot,
}

/// `a3·x³ + a2·x² + a1·x + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoeffs {
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl CubicCoeffs {
    pub fn new(a3: f64, a2: f64, a1: f64, a0: f64) -> Self {
        CubicCoeffs { a3, a2, a1, a0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.a3 * x + self.a2) * x + self.a1) * x + self.a0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (3.0 * self.a3 * x + 2.0 * self.a2) * x + self.a1
    }

    fn max_abs(&self) -> f64 {
        [self.a3, self.a2, self.a1, self.a0]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u8,
}

impl RealRoot {
    fn simple(value: f64) -> Self {
        RealRoot {
            value,
            multiplicity: 1,
        }
    }
}

/// All real roots of a cubic, sorted ascending, with multiplicities.
///
/// Leading coefficients under [`DEGENERATE_DEGREE_TOL`] relative to the
/// largest coefficient are dropped, so the K = M restriction of the variety
/// (whose cubic term vanishes) comes back as the expected quadratic.
pub fn real_roots_cubic(c: CubicCoeffs) -> Result<Vec<RealRoot>, RootError> {
    let scale = c.max_abs();
    if !scale.is_finite() || [c.a3, c.a2, c.a1, c.a0].iter().any(|x| !x.is_finite()) {
        return Err(RootError::NonFinite);
    }
    if scale == 0.0 {
        return Err(RootError::IdenticallyZero);
    }
    let n = CubicCoeffs::new(c.a3 / scale, c.a2 / scale, c.a1 / scale, c.a0 / scale);
    let mut roots = if n.a3.abs() > DEGENERATE_DEGREE_TOL {
        cubic_closed_form(&n)
    } else {
        quadratic_roots(n.a2, n.a1, n.a0)
    };
    roots.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(roots)
}

/// Real roots of `a·x² + b·x + c` with the same degree-reduction rule as the
/// cubic solver.
pub fn real_roots_quadratic(a: f64, b: f64, c: f64) -> Result<Vec<RealRoot>, RootError> {
    real_roots_cubic(CubicCoeffs::new(0.0, a, b, c))
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<RealRoot> {
    if a.abs() <= DEGENERATE_DEGREE_TOL {
        if b.abs() <= DEGENERATE_DEGREE_TOL {
            return Vec::new();
        }
        return vec![RealRoot::simple(-c / b)];
    }
    let disc = b * b - 4.0 * a * c;
    let size = (b * b).max((4.0 * a * c).abs());
    if disc.abs() <= DISCRIMINANT_TOL * size {
        return vec![RealRoot {
            value: -b / (2.0 * a),
            multiplicity: 2,
        }];
    }
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (mut r1, mut r2) = if q == 0.0 {
        // b = 0 and c = 0 cannot reach here (that is the double-root case).
        let r = (-c / a).sqrt();
        (-r, r)
    } else {
        (q / a, c / q)
    };
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    vec![RealRoot::simple(r1), RealRoot::simple(r2)]
}

fn cubic_closed_form(c: &CubicCoeffs) -> Vec<RealRoot> {
    let b = c.a2 / c.a3;
    let cc = c.a1 / c.a3;
    let d = c.a0 / c.a3;
    // x = t − b/3 gives t³ + p·t + q.
    let shift = b / 3.0;
    let p = cc - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let size = half_q * half_q + third_p.abs().powi(3);

    let raw: Vec<RealRoot> = if size == 0.0 {
        vec![RealRoot {
            value: -shift,
            multiplicity: 3,
        }]
    } else if disc.abs() <= DISCRIMINANT_TOL * size {
        if p.abs() <= DISCRIMINANT_TOL * (b * b).max(1.0) {
            vec![RealRoot {
                value: -shift,
                multiplicity: 3,
            }]
        } else {
            let simple = 3.0 * q / p - shift;
            let double = -1.5 * q / p - shift;
            vec![
                RealRoot::simple(simple),
                RealRoot {
                    value: double,
                    multiplicity: 2,
                },
            ]
        }
    } else if disc > 0.0 {
        let u = (-half_q - half_q.signum() * disc.sqrt()).cbrt();
        let t = if u == 0.0 { 0.0 } else { u - third_p / u };
        vec![RealRoot::simple(t - shift)]
    } else {
        let r = 2.0 * (-third_p).sqrt();
        let cos_arg = (half_q / third_p) * (-1.0 / third_p).sqrt();
        let phi = cos_arg.clamp(-1.0, 1.0).acos();
        (0..3)
            .map(|k| {
                let t = r * (phi / 3.0 - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                RealRoot::simple(t - shift)
            })
            .collect()
    };
    raw.into_iter()
        .map(|root| {
            if root.multiplicity == 1 {
                RealRoot::simple(newton_polish(c, root.value))
            } else {
                root
            }
        })
        .collect()
}

fn newton_polish(c: &CubicCoeffs, mut x: f64) -> f64 {
    let mut fx = c.eval(x).abs();
    for _ in 0..8 {
        let d = c.derivative(x);
        if d == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - c.eval(x) / d;
        let fnext = c.eval(next).abs();
        if !(fnext < fx) {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}

/// Real numbers that are roots of every non-trivial quadratic in `polys`.
///
/// Each polynomial is given high-to-low as `(a, b, c)` for `a·λ² + b·λ + c`.
/// A polynomial is trivial when all of its coefficients are below
/// [`DEGENERATE_DEGREE_TOL`] times the largest coefficient of the whole set.
/// Roots from different polynomials are clustered by single linkage with gap
/// `tol`; clusters containing a root of every non-trivial polynomial are
/// returned by their mean.
pub fn common_real_roots(polys: &[[f64; 3]], tol: f64) -> Result<Vec<f64>, RootError> {
    if polys.iter().flatten().any(|c| !c.is_finite()) {
        return Err(RootError::NonFinite);
    }
    let scale = polys
        .iter()
        .flatten()
        .fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(RootError::IdenticallyZero);
    }
    let mut tagged: Vec<(f64, usize)> = Vec::new();
    let mut active = 0usize;
    for poly in polys {
        let own = poly.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if own <= DEGENERATE_DEGREE_TOL * scale {
            continue;
        }
        let roots = real_roots_quadratic(poly[0], poly[1], poly[2])?;
        if roots.is_empty() {
            return Err(RootError::NoCommonRoot);
        }
        tagged.extend(roots.iter().map(|r| (r.value, active)));
        active += 1;
    }
    tagged.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut centers = Vec::new();
    let mut start = 0;
    while start < tagged.len() {
        let mut end = start + 1;
        while end < tagged.len() && tagged[end].0 - tagged[end - 1].0 <= tol {
            end += 1;
        }
        let cluster = &tagged[start..end];
        let mut seen = vec![false; active];
        for &(_, idx) in cluster {
            seen[idx] = true;
        }
        if seen.iter().all(|&s| s) {
            let mean = cluster.iter().map(|r| r.0).sum::<f64>() / cluster.len() as f64;
            centers.push(mean);
        }
        start = end;
    }
    if centers.is_empty() {
        Err(RootError::NoCommonRoot)
    } else {
        Ok(centers)
    }
}
