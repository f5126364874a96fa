use clap::{Args, Parser, Subcommand};
use wkspin_core::numerics::ToleranceConfig;
use wkspin_core::parse::parse_real;

fn real(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "wkspin",
    version,
    about = "Weak Killing spinors and Einstein-Dirac checks on X³(K,L,M)",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Print the calibrated sign conventions and the trial table.
    #[arg(long, global = true)]
    pub show_conventions: bool,

    /// Record wall-clock duration in the JSON report.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Flatness defect gate for the WK connection (default 1e-10)
    #[arg(long, global = true, value_parser = real)]
    pub tol_defect: Option<f64>,
    /// Variety residual gate on the unit point (default 1e-9)
    #[arg(long, global = true, value_parser = real)]
    pub tol_residual: Option<f64>,
    /// Distance at which λ candidates count as one root (default 1e-8)
    #[arg(long, global = true, value_parser = real)]
    pub tol_root_cluster: Option<f64>,
    /// RK4 step for transport checks (default 1e-3)
    #[arg(long, global = true, value_parser = real)]
    pub tol_ode_step: Option<f64>,
    /// Newton polish target for traced points (default 1e-10)
    #[arg(long, global = true, value_parser = real)]
    pub tol_trace_polish: Option<f64>,
    /// Holonomy and norm-drift gate (default 1e-5)
    #[arg(long, global = true, value_parser = real)]
    pub tol_holonomy: Option<f64>,
}

impl TolArgs {
    pub fn config(&self) -> ToleranceConfig {
        let mut t = ToleranceConfig::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.defect_tol, self.tol_defect);
        set(&mut t.residual_tol, self.tol_residual);
        set(&mut t.root_cluster_tol, self.tol_root_cluster);
        set(&mut t.ode_step, self.tol_ode_step);
        set(&mut t.trace_polish_tol, self.tol_trace_polish);
        set(&mut t.holonomy_tol, self.tol_holonomy);
        t
    }
}

#[derive(Debug, Args)]
pub struct Point {
    #[arg(value_parser = real)]
    pub k: f64,
    #[arg(value_parser = real)]
    pub l: f64,
    #[arg(value_parser = real)]
    pub m: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brackets, Ricci curvature and metric data.
    #[command(allow_negative_numbers = true)]
    Analyze(Point),
    /// Full WK-spinor and Einstein-Dirac verification.
    #[command(allow_negative_numbers = true)]
    Verify(Point),
    /// Real roots L of F(K, L, M) = 0.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long, value_parser = real)]
        k: f64,
        #[arg(long, value_parser = real)]
        m: f64,
    },
    /// Trace the variety in P²(R).
    Trace {
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
    /// Verify both solutions on the K = M locus.
    #[command(allow_negative_numbers = true)]
    Sasaki {
        #[arg(long, value_parser = real)]
        k: f64,
    },
}
