use crate::geometry::ModelParams;

/// The sextic whose zero set carries the WK-spinor metrics:
/// `−K²L(L−M)²M + L³M³ + KL²M²(M−L) + K³(L−M)(L+M)²`.
pub fn variety_f(p: &ModelParams) -> f64 {
    let (k, l, m) = (p.k, p.l, p.m);
    let lm = l - m;
    let lpm = l + m;
    -k * k * l * lm * lm * m + l * l * l * m * m * m + k * l * l * m * m * (m - l)
        + k * k * k * lm * lpm * lpm
}

/// Analytic gradient of [`variety_f`].
pub fn variety_grad(p: &ModelParams) -> [f64; 3] {
    let (k, l, m) = (p.k, p.l, p.m);
    let lm = l - m;
    let lpm = l + m;
    let dk = -2.0 * k * l * m * lm * lm + l * l * m * m * (m - l) + 3.0 * k * k * lm * lpm * lpm;
    let dl = -k * k * m * (lm * lm + 2.0 * l * lm)
        + 3.0 * l * l * m * m * m
        + k * m * m * (2.0 * l * (m - l) - l * l)
        + k * k * k * (lpm * lpm + 2.0 * lm * lpm);
    let dm = -k * k * l * (lm * lm - 2.0 * m * lm)
        + 3.0 * l * l * l * m * m
        + k * l * l * (2.0 * m * (m - l) + m * m)
        + k * k * k * (-lpm * lpm + 2.0 * lm * lpm);
    [dk, dl, dm]
}
