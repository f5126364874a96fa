//! Human-readable renderings.

use std::fmt::Write;

use wkspin_core::moduli::TraceSummary;
use wkspin_core::report::{AnalyzeReport, Payload, SolveReport};
use wkspin_core::wk::{Calibration, EdReport, Verdict};

fn triple(v: [f64; 3]) -> String {
    format!("({:.10}, {:.10}, {:.10})", v[0], v[1], v[2])
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.3e}"))
}

pub fn payload(p: &Payload) -> String {
    match p {
        Payload::Analyze(a) => analyze(a),
        Payload::Verify(r) => verify(r),
        Payload::Solve(s) => solve(s),
        Payload::Trace(t) => trace(t),
        Payload::Sasaki(rs) => rs.iter().map(verify).collect::<Vec<_>>().join("\n"),
    }
}

fn analyze(a: &AnalyzeReport) -> String {
    let c = &a.curvature;
    let mut s = String::new();
    let _ = writeln!(s, "params       {}", a.params);
    let _ = writeln!(s, "brackets     {}", triple(c.brackets));
    let _ = writeln!(s, "ricci        {}", triple(c.ricci));
    let _ = writeln!(s, "S            {:.12}", c.scalar);
    let _ = writeln!(s, "|Ric|^2      {:.12}", c.ricci_norm_sq);
    let _ = writeln!(
        s,
        "class        {:?}, S {:?}",
        a.classification.kind, a.classification.scalar_sign
    );
    match (&a.so3_metric, &a.so3_metric_error) {
        (Some(g), _) => {
            let _ = writeln!(s, "so(3) metric diag{}", triple(*g));
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "so(3) metric undefined: {e}");
        }
        _ => {}
    }
    s
}

fn verify(r: &EdReport) -> String {
    let mut s = String::new();
    let verdict = match r.verdict {
        Verdict::Pass => "PASS".to_string(),
        Verdict::Fail => format!("FAIL {:?}", r.reasons),
    };
    let _ = writeln!(s, "{}  {verdict}", r.params);
    if let Some(sc) = r.scalar_curvature {
        let _ = writeln!(s, "  S                  {sc:.12}");
    }
    let _ = writeln!(s, "  |F(p)|             {}", opt(r.variety_residual));
    if let Some(l) = r.lambda {
        let _ = writeln!(s, "  lambda             {l:.12}");
    }
    if let Some(n) = &r.lambda_theorem {
        let _ = writeln!(s, "  lambda (printed)   {:.12} ({:?} branch)", n.lambda, n.branch);
    }
    let _ = writeln!(s, "  defect             {}", opt(r.integrability_defect));
    let _ = writeln!(s, "  spinor space dim   {}", r.spinor_space_dim);
    let _ = writeln!(
        s,
        "  Einstein-Dirac     {}  sign {}",
        opt(r.einstein_dirac_residual),
        r.ed_sign.map_or("-".into(), |x| format!("{x:?}"))
    );
    let _ = writeln!(s, "  Dirac residual     {}", opt(r.dirac_residual));
    let _ = writeln!(s, "  norm drift         {}", opt(r.norm_drift));
    let _ = writeln!(s, "  holonomy           {}", opt(r.holonomy_defect));
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn solve(r: &SolveReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "K = {}, M = {}: {} real root(s)", r.k, r.m, r.roots.len());
    for (root, f) in r.roots.iter().zip(&r.residuals) {
        let _ = writeln!(
            s,
            "  L = {:.16}  multiplicity {}  F = {f:.3e}",
            root.value, root.multiplicity
        );
    }
    s
}

fn trace(t: &TraceSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", t.line());
    let _ = writeln!(s, "  resolution         {}", t.resolution);
    let _ = writeln!(s, "  points             {}", t.points);
    let _ = writeln!(s, "  max |F|            {:.3e}", t.max_residual);
    let _ = writeln!(
        s,
        "  ends per corner    [1:0:0] {}  [0:1:0] {}  [0:0:1] {}",
        t.ends_per_corner[0], t.ends_per_corner[1], t.ends_per_corner[2]
    );
    let _ = writeln!(s, "  open ends          {}", t.open_ends);
    let _ = writeln!(s, "  closed loops       {}", t.closed_loops);
    let _ = writeln!(s, "  saddle cells       {}", t.ambiguous_cells);
    let _ = writeln!(s, "  self-intersections {}", t.self_intersections);
    let _ = writeln!(
        s,
        "  pole points        printed {}  flat {}",
        t.printed_pole_points, t.flat_pole_points
    );
    s
}

pub fn conventions(cal: &Calibration) -> String {
    let c = cal.convention;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "conventions: clifford {:?}, spin {:?}, orientation {:?}",
        c.clifford_sign, c.spin_sign, c.orientation
    );
    for t in &cal.trials {
        let _ = writeln!(
            s,
            "  clifford {:<5} spin {:<5} orientation {:<5} flat {:<5} sign rule {:<5} lambdas {:?}",
            format!("{:?}", t.convention.clifford_sign),
            format!("{:?}", t.convention.spin_sign),
            format!("{:?}", t.convention.orientation),
            t.flat,
            t.sign_rule_ok,
            t.lambdas
        );
    }
    s
}
