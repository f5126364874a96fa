//! Marching-squares tracer for the sextic on the unit sphere.
//!
//! The sphere is covered by the cube faces `|K| = 1`, `|L| = 1`, `|M| = 1`
//! of `[-1,1]³`. Since `F(−p) = F(p)`, the three faces with positive normal
//! coordinate already cover `P²(ℝ)`; grid vertices are keyed by integer
//! coordinates with canonical sign, which glues the face boundaries under
//! the antipodal map.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ModuliError;
use crate::geometry::{curvature, ModelParams};
use crate::wk::{variety_f, variety_grad};

pub const MIN_RESOLUTION: usize = 64;

pub const CORNERS: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

const POLISH_ITERATIONS: usize = 60;

/// Radius of the neighbourhood of each corner that the tracer cuts out.
///
/// All six branches meet at the corners (a cusp and a smooth arc through each
/// one), so the grid cannot separate them there; below about `8/resolution`
/// neighbouring branches get chained into each other.
pub fn corner_radius(resolution: usize) -> f64 {
    (8.0 / resolution as f64).max(0.05)
}

/// Upper bound on the distance between consecutive traced points.
pub fn arc_step(resolution: usize) -> f64 {
    4.0 / resolution as f64
}

fn label_radius(resolution: usize) -> f64 {
    corner_radius(resolution) + 8.0 / resolution as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoint {
    Corner(usize),
    Open,
}

impl Endpoint {
    pub fn label(&self) -> &'static str {
        match self {
            Endpoint::Corner(0) => "[1:0:0]",
            Endpoint::Corner(1) => "[0:1:0]",
            Endpoint::Corner(_) => "[0:0:1]",
            Endpoint::Open => "open",
        }
    }
}

/// One traced polyline of the variety.
///
/// Points have unit norm. The first point carries the canonical sign and the
/// rest follow continuously, so a branch may leave the canonical half-space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliBranch {
    pub id: usize,
    /// Cube face (0: K, 1: L, 2: M) containing the middle of the branch.
    pub chart: usize,
    pub points: Vec<ModelParams>,
    pub endpoints: [Endpoint; 2],
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub resolution: usize,
    pub branches: Vec<ModuliBranch>,
    /// Cells with four sign changes, resolved by the centre value.
    pub ambiguous_cells: usize,
    /// Chain vertices of degree above two.
    pub self_intersections: usize,
    /// Crossings whose Newton polish missed the target and were dropped.
    pub unpolished: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub resolution: usize,
    pub branches: usize,
    pub closed_loops: usize,
    pub junctions: usize,
    pub ends_per_corner: [usize; 3],
    pub open_ends: usize,
    pub points: usize,
    pub max_residual: f64,
    pub ambiguous_cells: usize,
    pub self_intersections: usize,
    pub unpolished: usize,
    /// Points with `|S² − |Ric|²| < 1e-8`.
    pub printed_pole_points: usize,
    /// Points with `|S² − 2|Ric|²| < 1e-8`.
    pub flat_pole_points: usize,
}

impl TraceSummary {
    pub fn line(&self) -> String {
        format!("{} branches, {} junctions", self.branches, self.junctions)
    }
}

type Key = [i64; 3];
type EdgeKey = (Key, Key);

fn canonical_key(v: Key) -> Key {
    match v.iter().find(|x| **x != 0) {
        Some(x) if *x < 0 => [-v[0], -v[1], -v[2]],
        _ => v,
    }
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn neg(a: [f64; 3]) -> [f64; 3] {
    [-a[0], -a[1], -a[2]]
}

fn f_at(v: [f64; 3]) -> f64 {
    variety_f(&ModelParams::from_array(v))
}

fn key_point(k: Key, n: usize) -> [f64; 3] {
    let s = n as f64;
    [k[0] as f64 / s, k[1] as f64 / s, k[2] as f64 / s]
}

/// Projective distance to a coordinate corner.
pub(crate) fn corner_distance(p: [f64; 3], corner: usize) -> f64 {
    let c = CORNERS[corner];
    dist(p, c).min(dist(p, neg(c)))
}

fn nearest_corner(p: [f64; 3]) -> (usize, f64) {
    (0..3)
        .map(|k| (k, corner_distance(p, k)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("three corners")
}

/// Newton iteration for `F = 0` along the tangential gradient, renormalized
/// onto the sphere after each step.
pub(crate) fn polish(p: [f64; 3]) -> [f64; 3] {
    let mut p = unit(p);
    for _ in 0..POLISH_ITERATIONS {
        let f = f_at(p);
        if f.abs() < 1e-16 {
            break;
        }
        let g = variety_grad(&ModelParams::from_array(p));
        let gp = dot(g, p);
        let t = [g[0] - gp * p[0], g[1] - gp * p[1], g[2] - gp * p[2]];
        let tt = dot(t, t);
        if tt == 0.0 || !tt.is_finite() {
            break;
        }
        let q = unit([
            p[0] - f * t[0] / tt,
            p[1] - f * t[1] / tt,
            p[2] - f * t[2] / tt,
        ]);
        let moved = dist(p, q);
        p = q;
        if moved < 1e-16 {
            break;
        }
    }
    p
}

fn cell_keys(face: usize, n: usize, i: usize, j: usize) -> [Key; 4] {
    let (u, w) = match face {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let a = -(n as i64) + 2 * i as i64;
    let b = -(n as i64) + 2 * j as i64;
    let v = |da: i64, db: i64| {
        let mut k = [0i64; 3];
        k[face] = n as i64;
        k[u] = a + da;
        k[w] = b + db;
        canonical_key(k)
    };
    [v(0, 0), v(2, 0), v(2, 2), v(0, 2)]
}

fn edge(a: Key, b: Key) -> EdgeKey {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Zero-crossing segments of one cell and whether it was a saddle.
fn cell_segments(keys: &[Key; 4], n: usize) -> (Vec<(EdgeKey, EdgeKey)>, bool) {
    let fs: Vec<f64> = keys.iter().map(|k| f_at(key_point(*k, n))).collect();
    let mut crossings = Vec::with_capacity(4);
    for e in 0..4 {
        let (fa, fb) = (fs[e], fs[(e + 1) % 4]);
        if (fa < 0.0) != (fb < 0.0) {
            crossings.push(edge(keys[e], keys[(e + 1) % 4]));
        }
    }
    match crossings.len() {
        2 => (vec![(crossings[0], crossings[1])], false),
        4 => {
            // Crossing i sits on edge i; the centre decides which corners join.
            let centre = fs.iter().sum::<f64>() / 4.0;
            if (centre < 0.0) == (fs[0] < 0.0) {
                (
                    vec![(crossings[0], crossings[1]), (crossings[2], crossings[3])],
                    true,
                )
            } else {
                (
                    vec![(crossings[3], crossings[0]), (crossings[1], crossings[2])],
                    true,
                )
            }
        }
        _ => (Vec::new(), false),
    }
}

fn crossing_point(e: &EdgeKey, n: usize) -> [f64; 3] {
    let a = unit(key_point(e.0, n));
    let mut b = unit(key_point(e.1, n));
    if dot(a, b) < 0.0 {
        b = neg(b);
    }
    let (fa, fb) = (f_at(a), f_at(b));
    let t = fa / (fa - fb);
    polish([
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ])
}

/// Traces `F = 0` with `resolution` cells per cube-face side.
pub fn trace_variety(resolution: usize) -> Result<Trace, ModuliError> {
    trace_variety_with(resolution, 1e-10)
}

pub fn trace_variety_with(resolution: usize, polish_tol: f64) -> Result<Trace, ModuliError> {
    if resolution < MIN_RESOLUTION {
        return Err(ModuliError::ResolutionTooCoarse(resolution));
    }
    let n = resolution + resolution % 2;
    let cells: Vec<(usize, usize, usize)> = (0..3)
        .flat_map(|f| (0..n).flat_map(move |i| (0..n).map(move |j| (f, i, j))))
        .collect();
    let per_cell: Vec<(Vec<(EdgeKey, EdgeKey)>, bool)> = cells
        .par_iter()
        .map(|&(f, i, j)| cell_segments(&cell_keys(f, n, i, j), n))
        .collect();
    let ambiguous_cells = per_cell.iter().filter(|c| c.1).count();
    let segments: Vec<(EdgeKey, EdgeKey)> = per_cell.into_iter().flat_map(|c| c.0).collect();

    let edges: Vec<EdgeKey> = segments
        .iter()
        .flat_map(|(a, b)| [*a, *b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let positions: Vec<[f64; 3]> = edges.par_iter().map(|e| crossing_point(e, n)).collect();
    let pos: BTreeMap<EdgeKey, [f64; 3]> = edges.into_iter().zip(positions).collect();

    let radius = corner_radius(n);
    let mut unpolished = BTreeSet::new();
    let keep = |e: &EdgeKey, bad: &mut BTreeSet<EdgeKey>| {
        let p = pos[e];
        if !(f_at(p).abs() < polish_tol) {
            bad.insert(*e);
            return false;
        }
        nearest_corner(p).1 >= radius
    };
    let mut adj: BTreeMap<EdgeKey, Vec<EdgeKey>> = BTreeMap::new();
    for (a, b) in &segments {
        if a == b || !keep(a, &mut unpolished) || !keep(b, &mut unpolished) {
            continue;
        }
        adj.entry(*a).or_default().push(*b);
        adj.entry(*b).or_default().push(*a);
    }
    for v in adj.values_mut() {
        v.sort();
        v.dedup();
    }
    let self_intersections = adj.values().filter(|v| v.len() > 2).count();

    let mut seen: BTreeSet<EdgeKey> = BTreeSet::new();
    let mut chains: Vec<(Vec<EdgeKey>, bool)> = Vec::new();
    let walk = |start: EdgeKey, seen: &mut BTreeSet<EdgeKey>| {
        let mut path = vec![start];
        seen.insert(start);
        let mut cur = start;
        loop {
            let next = adj[&cur].iter().find(|x| !seen.contains(*x)).copied();
            match next {
                Some(x) => {
                    seen.insert(x);
                    path.push(x);
                    cur = x;
                }
                None => break,
            }
        }
        path
    };
    for (k, v) in &adj {
        if v.len() == 1 && !seen.contains(k) {
            chains.push((walk(*k, &mut seen), false));
        }
    }
    for k in adj.keys() {
        if !seen.contains(k) {
            chains.push((walk(*k, &mut seen), true));
        }
    }

    let label = label_radius(n);
    let branches = chains
        .into_iter()
        .enumerate()
        .map(|(id, (path, closed))| {
            let mut pts: Vec<[f64; 3]> = Vec::with_capacity(path.len());
            for e in &path {
                let mut p = pos[e];
                match pts.last() {
                    Some(prev) if dot(*prev, p) < 0.0 => p = neg(p),
                    None => p = super::canonical_sign(p),
                    _ => {}
                }
                pts.push(p);
            }
            let end_label = |p: [f64; 3]| {
                let (k, d) = nearest_corner(p);
                if !closed && d < label {
                    Endpoint::Corner(k)
                } else {
                    Endpoint::Open
                }
            };
            let mut endpoints = [end_label(pts[0]), end_label(pts[pts.len() - 1])];
            if endpoints[1] < endpoints[0] {
                pts.reverse();
                if dot(pts[0], super::canonical_sign(pts[0])) < 0.0 {
                    pts.iter_mut().for_each(|p| *p = neg(*p));
                }
                endpoints.swap(0, 1);
            }
            let mid = pts[pts.len() / 2];
            let chart = (0..3)
                .max_by(|a, b| mid[*a].abs().total_cmp(&mid[*b].abs()))
                .expect("three axes");
            ModuliBranch {
                id,
                chart,
                points: pts.into_iter().map(ModelParams::from_array).collect(),
                endpoints,
                closed,
            }
        })
        .collect();

    Ok(Trace {
        resolution: n,
        branches,
        ambiguous_cells,
        self_intersections,
        unpolished: unpolished.len(),
    })
}

pub fn trace_summary(trace: &Trace) -> TraceSummary {
    let mut ends_per_corner = [0usize; 3];
    let mut open_ends = 0;
    let mut points = 0;
    let mut max_residual: f64 = 0.0;
    let mut printed_pole_points = 0;
    let mut flat_pole_points = 0;
    for b in &trace.branches {
        if !b.closed {
            for e in b.endpoints {
                match e {
                    Endpoint::Corner(k) => ends_per_corner[k] += 1,
                    Endpoint::Open => open_ends += 1,
                }
            }
        }
        for p in &b.points {
            points += 1;
            max_residual = max_residual.max(variety_f(p).abs());
            let c = curvature(p);
            let s2 = c.scalar * c.scalar;
            if (s2 - c.ricci_norm_sq).abs() < 1e-8 {
                printed_pole_points += 1;
            }
            if (s2 - 2.0 * c.ricci_norm_sq).abs() < 1e-8 {
                flat_pole_points += 1;
            }
        }
    }
    TraceSummary {
        resolution: trace.resolution,
        branches: trace.branches.iter().filter(|b| !b.closed).count(),
        closed_loops: trace.branches.iter().filter(|b| b.closed).count(),
        junctions: ends_per_corner.iter().filter(|c| **c >= 3).count(),
        ends_per_corner,
        open_ends,
        points,
        max_residual,
        ambiguous_cells: trace.ambiguous_cells,
        self_intersections: trace.self_intersections,
        unpolished: trace.unpolished,
        printed_pole_points,
        flat_pole_points,
    }
}

/// Distance from `p` (any scale, either sign) to the nearest traced polyline.
pub fn distance_to_trace(trace: &Trace, p: &ModelParams) -> f64 {
    let q = unit(p.to_array());
    let mut best = f64::INFINITY;
    for b in &trace.branches {
        for w in b.points.windows(2) {
            let (a, c) = (w[0].to_array(), w[1].to_array());
            for s in [q, neg(q)] {
                best = best.min(segment_distance(s, a, c));
            }
        }
    }
    best
}

fn segment_distance(p: [f64; 3], a: [f64; 3], b: [f64; 3]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let ap = [p[0] - a[0], p[1] - a[1], p[2] - a[2]];
    let l2 = dot(ab, ab);
    let t = if l2 == 0.0 {
        0.0
    } else {
        (dot(ap, ab) / l2).clamp(0.0, 1.0)
    };
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_trace_has_six_corner_to_corner_branches() {
        let t = trace_variety(128).unwrap();
        let s = trace_summary(&t);
        assert_eq!(s.branches, 6, "{s:?}");
        assert_eq!(s.closed_loops, 0);
        assert_eq!(s.open_ends, 0);
        assert_eq!(s.ends_per_corner, [4, 4, 4]);
        assert_eq!(s.junctions, 3);
        assert!(s.max_residual < 1e-10);
        for b in &t.branches {
            assert_ne!(b.endpoints[0], b.endpoints[1]);
        }
    }

    #[test]
    fn consecutive_points_are_close() {
        let t = trace_variety(128).unwrap();
        for b in &t.branches {
            for w in b.points.windows(2) {
                assert!(dist(w[0].to_array(), w[1].to_array()) < arc_step(128));
            }
        }
    }

    #[test]
    fn rejects_coarse_grids() {
        assert_eq!(
            trace_variety(32).unwrap_err(),
            ModuliError::ResolutionTooCoarse(32)
        );
    }

    #[test]
    fn polish_lands_on_the_variety() {
        let p = polish([1.0, -0.3, 1.0]);
        assert!(f_at(p).abs() < 1e-15);
        assert!((dot(p, p) - 1.0).abs() < 1e-15);
    }
}
