use std::fs::File;
use std::io::BufWriter;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use wkspin_core::geometry::ModelParams;
use wkspin_core::moduli::{
    km_locus, solve_for_l, trace_summary, trace_variety_with, write_csv, write_svg,
};
use wkspin_core::numerics::ToleranceConfig;
use wkspin_core::report::{analyze, Payload, RunReport, SolveReport};
use wkspin_core::wk::{calibration, conventions, variety_f, verify_with, EdReport};

use crate::args::{Cli, Command, Point};
use crate::text;
use crate::Status;

pub fn run(cli: &Cli) -> Result<Status> {
    let started = Instant::now();
    let tol = cli.tol.config();
    tol.validate()?;
    if cli.show_conventions {
        let cal = calibration().context("calibrating sign conventions")?;
        print!("{}", text::conventions(cal));
    }
    let Some(command) = &cli.command else {
        if cli.show_conventions {
            return Ok(Status::Pass);
        }
        bail!("no subcommand given; see --help");
    };
    let (payload, status) = match command {
        Command::Analyze(p) => {
            let p = point(p);
            (Payload::Analyze(analyze(&p)), Status::Pass)
        }
        Command::Verify(p) => {
            let p = point(p);
            if p.is_zero() {
                bail!("(0, 0, 0) does not define a metric");
            }
            let r = verify_with(&p, &tol);
            let status = verdict(&r);
            (Payload::Verify(r), status)
        }
        Command::Solve { k, m } => {
            let roots = solve_for_l(*k, *m)?;
            let residuals = roots
                .iter()
                .map(|r| variety_f(&ModelParams::new(*k, r.value, *m)))
                .collect();
            (
                Payload::Solve(SolveReport {
                    k: *k,
                    m: *m,
                    roots,
                    residuals,
                }),
                Status::Pass,
            )
        }
        Command::Trace {
            resolution,
            csv,
            svg,
        } => {
            let trace = trace_variety_with(*resolution, tol.trace_polish_tol)?;
            if let Some(path) = csv {
                let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                write_csv(&trace, BufWriter::new(f))?;
            }
            if let Some(path) = svg {
                let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                write_svg(&trace, BufWriter::new(f))?;
            }
            let summary = trace_summary(&trace);
            let status = if summary.max_residual < tol.trace_polish_tol {
                Status::Pass
            } else {
                Status::Fail
            };
            (Payload::Trace(summary), status)
        }
        Command::Sasaki { k } => {
            let (lo, hi) = km_locus(*k)?;
            let reports: Vec<EdReport> = [lo, hi]
                .iter()
                .map(|l| verify_with(&ModelParams::new(*k, *l, *k), &tol))
                .collect();
            let status = if reports.iter().all(EdReport::passed) {
                Status::Pass
            } else {
                Status::Fail
            };
            (Payload::Sasaki(reports), status)
        }
    };
    emit(cli, &tol, payload, started);
    Ok(status)
}

fn point(p: &Point) -> ModelParams {
    ModelParams::new(p.k, p.l, p.m)
}

fn verdict(r: &EdReport) -> Status {
    if r.passed() {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn emit(cli: &Cli, tol: &ToleranceConfig, payload: Payload, started: Instant) {
    if cli.json {
        let command = std::env::args().skip(1).collect();
        let mut report = RunReport::new(command, *tol, conventions().ok(), payload);
        if cli.timing {
            report.duration_seconds = Some(started.elapsed().as_secs_f64());
        }
        println!("{}", report.to_json());
    } else {
        print!("{}", text::payload(&payload));
        if cli.timing {
            println!("elapsed {:.3} s", started.elapsed().as_secs_f64());
        }
    }
}
