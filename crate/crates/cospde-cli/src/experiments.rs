//! Named experiments: each validation table is one command, emitting a CSV
//! with the sweep axis, per-component errors, and (as comment lines) row
//! timings. The deterministic tables compare the truncated-midpoint
//! inversion against the exact solution; the stochastic tables compare
//! Monte Carlo moments against the deterministic quadrature reference.

use std::path::PathBuf;
use std::time::Instant;

use cospde::error::Error;
use cospde::kernel::kernel_value;
use cospde::linalg::Vector2;
use cospde::oracle::{exact_grid, exact_solution, OracleConfig, SolutionField};
use cospde::problem::CoupledProblem;
use cospde::quadrature::{
    gauss_laguerre_inverse, midpoint_inverse, midpoint_inverse_legacy_with_sweep, truncation_bound,
    GaussLaguerreRule, QuadratureGrid,
};
use cospde::stochastic::{
    mc_moments, reference_moments, MomentField, MonteCarloConfig, RandomCoefficients,
};
use rayon::prelude::*;

use crate::config::Resolved;
use crate::csvout::CsvFile;

/// One sweep row of an experiment report.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub sweep: f64,
    pub err1: f64,
    pub err2: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub sweep_name: &'static str,
    pub rows: Vec<ReportRow>,
}

impl ErrorReport {
    fn print(&self, title: &str) {
        for row in &self.rows {
            println!(
                "{title}: {}={} err_u1={:.4e} err_u2={:.4e} ({:.3} s)",
                self.sweep_name, row.sweep, row.err1, row.err2, row.seconds
            );
        }
    }
}

/// Componentwise RMSE between two fields on identical grids.
pub fn rmse_fields(
    approx: &[Vec<Vector2>],
    reference: &[Vec<Vector2>],
) -> Result<(f64, f64), Error> {
    if approx.len() != reference.len()
        || approx
            .iter()
            .zip(reference)
            .any(|(a, b)| a.len() != b.len())
    {
        return Err(Error::GridMismatch(format!(
            "field shapes differ: {} vs {} rows",
            approx.len(),
            reference.len()
        )));
    }
    let mut acc1 = 0.0;
    let mut acc2 = 0.0;
    let mut n = 0.0;
    for (ra, rb) in approx.iter().zip(reference) {
        for (a, b) in ra.iter().zip(rb) {
            acc1 += (a.v1 - b.v1) * (a.v1 - b.v1);
            acc2 += (a.v2 - b.v2) * (a.v2 - b.v2);
            n += 1.0;
        }
    }
    Ok(((acc1 / n).sqrt(), (acc2 / n).sqrt()))
}

fn ekman(cfg: &Resolved) -> Result<CoupledProblem, Error> {
    CoupledProblem::ekman(cfg.a, cfg.nu)
}

fn coefficients(cfg: &Resolved) -> RandomCoefficients {
    RandomCoefficients::new(cfg.a_dist, cfg.nu_dist)
}

/// Approximate field over `(z_grid, t_grid)` with the legacy summation,
/// one kernel sweep per time row (the kernel is z-independent).
fn legacy_field(
    problem: &CoupledProblem,
    grid: &QuadratureGrid,
    z_grid: &[f64],
    t_grid: &[f64],
) -> Vec<Vec<Vector2>> {
    t_grid
        .par_iter()
        .map(|&t| {
            if t == 0.0 {
                return vec![Vector2::zero(); z_grid.len()];
            }
            let ext = grid.extended(1);
            let sweep: Vec<Vector2> = ext
                .nodes()
                .map(|omega| kernel_value(problem, omega, t, 1))
                .collect();
            z_grid
                .iter()
                .map(|&z| midpoint_inverse_legacy_with_sweep(grid, &sweep, z))
                .collect()
        })
        .collect()
}

/// Gauss-Laguerre degree sweep at a single evaluation point.
pub fn table1(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let problem = ekman(cfg)?;
    let exact = exact_solution(
        cfg.a,
        cfg.nu,
        |_| 1.0,
        cfg.z,
        cfg.t,
        &OracleConfig::default(),
    );
    let mut rows = Vec::new();
    for &degree in &cfg.degree_list {
        let started = Instant::now();
        let rule = GaussLaguerreRule::new(degree)?;
        let approx = gauss_laguerre_inverse(&problem, &rule, cfg.z, cfg.t);
        rows.push(ReportRow {
            sweep: degree as f64,
            err1: (approx.v1 - exact.v1).abs(),
            err2: (approx.v2 - exact.v2).abs(),
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    let report = ErrorReport {
        sweep_name: "M",
        rows,
    };
    let csv = report_csv(
        &report,
        &["M", "abs_err_u1", "abs_err_u2"],
        &format!("Gauss-Laguerre degree sweep at z={}, t={}", cfg.z, cfg.t),
        cfg,
    );
    Ok((report, vec![(PathBuf::from("table1.csv"), csv)]))
}

/// Truncation-radius sweep of the midpoint inversion at fixed step.
pub fn table2(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    point_error_sweep(cfg, SweepAxis::Radius)
}

/// Step sweep at fixed truncation radius.
pub fn table3(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    point_error_sweep(cfg, SweepAxis::Step)
}

enum SweepAxis {
    Radius,
    Step,
}

fn point_error_sweep(
    cfg: &Resolved,
    axis: SweepAxis,
) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let problem = ekman(cfg)?;
    let exact = exact_solution(
        cfg.a,
        cfg.nu,
        |_| 1.0,
        cfg.z,
        cfg.t,
        &OracleConfig::default(),
    );
    let sweep_values: Vec<f64> = match axis {
        SweepAxis::Radius => cfg.radius_list.clone(),
        SweepAxis::Step => cfg.step_list.clone(),
    };
    let mut rows = Vec::new();
    for &value in &sweep_values {
        let started = Instant::now();
        let grid = match axis {
            SweepAxis::Radius => QuadratureGrid::from_step(value, cfg.step)?,
            SweepAxis::Step => QuadratureGrid::from_step(cfg.radius, value)?,
        };
        let ext = grid.extended(1);
        let sweep: Vec<Vector2> = ext
            .nodes()
            .map(|omega| kernel_value(&problem, omega, cfg.t, 1))
            .collect();
        let approx = midpoint_inverse_legacy_with_sweep(&grid, &sweep, cfg.z);
        rows.push(ReportRow {
            sweep: value,
            err1: (approx.v1 - exact.v1).abs(),
            err2: (approx.v2 - exact.v2).abs(),
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    let (name, file, title) = match axis {
        SweepAxis::Radius => (
            "R",
            "table2.csv",
            format!("radius sweep, h={}, z={}, t={}", cfg.step, cfg.z, cfg.t),
        ),
        SweepAxis::Step => (
            "h",
            "table3.csv",
            format!("step sweep, R={}, z={}, t={}", cfg.radius, cfg.z, cfg.t),
        ),
    };
    let report = ErrorReport {
        sweep_name: name,
        rows,
    };
    let csv = report_csv(&report, &[name, "abs_err_u1", "abs_err_u2"], &title, cfg);
    Ok((report, vec![(PathBuf::from(file), csv)]))
}

/// Domain RMSE over the full space-time grid for the radius sweep.
pub fn table4(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let problem = ekman(cfg)?;
    let exact = exact_grid(
        cfg.a,
        cfg.nu,
        |_| 1.0,
        &cfg.z_grid,
        &cfg.t_grid,
        &OracleConfig::with_panels(4_000),
    );
    let mut rows = Vec::new();
    for &radius in &cfg.radius_list {
        let started = Instant::now();
        let grid = QuadratureGrid::from_step(radius, cfg.step)?;
        let approx = legacy_field(&problem, &grid, &cfg.z_grid, &cfg.t_grid);
        let (err1, err2) = rmse_fields(&approx, &exact.values)?;
        rows.push(ReportRow {
            sweep: radius,
            err1,
            err2,
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    let report = ErrorReport {
        sweep_name: "R",
        rows,
    };
    let mut csv = report_csv(
        &report,
        &["R", "rmse_u1", "rmse_u2"],
        &format!(
            "domain RMSE, h={}, z in [{}, {}] (z=0 included), t in [{}, {}] (t=0 row exact by construction)",
            cfg.step,
            cfg.z_grid[0],
            cfg.z_grid[cfg.z_grid.len() - 1],
            cfg.t_grid[0],
            cfg.t_grid[cfg.t_grid.len() - 1],
        ),
        cfg,
    );
    csv.info(&format!(
        "grid: {} z-points x {} t-points",
        cfg.z_grid.len(),
        cfg.t_grid.len()
    ));
    Ok((report, vec![(PathBuf::from("table4.csv"), csv)]))
}

/// Monte Carlo realization-count sweep: RMSE of the estimated moments
/// against the quadrature reference. `which` selects mean or std tables.
fn mc_realization_sweep(
    cfg: &Resolved,
    which: MomentKind,
) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let coeffs = coefficients(cfg);
    coeffs.check_spectral_condition()?;
    let reference = reference_field(cfg, &coeffs);
    let grid = QuadratureGrid::from_step(cfg.radius, cfg.step)?;
    let mut rows = Vec::new();
    for &k in &cfg.realization_list {
        let started = Instant::now();
        let field = mc_moments(
            &coeffs,
            &MonteCarloConfig {
                realizations: k,
                seed: cfg.seed,
                grid,
                z_grid: cfg.z_grid.clone(),
                t: cfg.t,
            },
        )?;
        let err = match which {
            MomentKind::Mean => field.rmse_mean(&reference)?,
            MomentKind::Std => field.rmse_std(&reference)?,
        };
        rows.push(ReportRow {
            sweep: k as f64,
            err1: err.v1,
            err2: err.v2,
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    let (file, what, col) = match which {
        MomentKind::Mean => ("table5.csv", "expectation", "mean"),
        MomentKind::Std => ("table6.csv", "standard deviation", "std"),
    };
    let report = ErrorReport {
        sweep_name: "K",
        rows,
    };
    let csv = report_csv(
        &report,
        &["K", &format!("rmse_{col}_u1"), &format!("rmse_{col}_u2")],
        &format!(
            "MC {what} RMSE vs quadrature reference, R={}, h={}, t={}, seed={}",
            cfg.radius, cfg.step, cfg.t, cfg.seed
        ),
        cfg,
    );
    Ok((report, vec![(PathBuf::from(file), csv)]))
}

/// Radius sweep at a fixed realization count.
fn mc_radius_sweep(
    cfg: &Resolved,
    which: MomentKind,
) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let coeffs = coefficients(cfg);
    coeffs.check_spectral_condition()?;
    let reference = reference_field(cfg, &coeffs);
    let mut rows = Vec::new();
    for &radius in &cfg.radius_list {
        let started = Instant::now();
        let grid = QuadratureGrid::from_step(radius, cfg.step)?;
        let field = mc_moments(
            &coeffs,
            &MonteCarloConfig {
                realizations: cfg.realizations,
                seed: cfg.seed,
                grid,
                z_grid: cfg.z_grid.clone(),
                t: cfg.t,
            },
        )?;
        let err = match which {
            MomentKind::Mean => field.rmse_mean(&reference)?,
            MomentKind::Std => field.rmse_std(&reference)?,
        };
        rows.push(ReportRow {
            sweep: radius,
            err1: err.v1,
            err2: err.v2,
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    let (file, what, col) = match which {
        MomentKind::Mean => ("table7.csv", "expectation", "mean"),
        MomentKind::Std => ("table8.csv", "standard deviation", "std"),
    };
    let report = ErrorReport {
        sweep_name: "R",
        rows,
    };
    let csv = report_csv(
        &report,
        &["R", &format!("rmse_{col}_u1"), &format!("rmse_{col}_u2")],
        &format!(
            "MC {what} RMSE vs quadrature reference, K={}, h={}, t={}, seed={}",
            cfg.realizations, cfg.step, cfg.t, cfg.seed
        ),
        cfg,
    );
    Ok((report, vec![(PathBuf::from(file), csv)]))
}

#[derive(Clone, Copy)]
enum MomentKind {
    Mean,
    Std,
}

pub fn table5(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    mc_realization_sweep(cfg, MomentKind::Mean)
}

pub fn table6(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    mc_realization_sweep(cfg, MomentKind::Std)
}

pub fn table7(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    mc_radius_sweep(cfg, MomentKind::Mean)
}

pub fn table8(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    mc_radius_sweep(cfg, MomentKind::Std)
}

fn reference_field(cfg: &Resolved, coeffs: &RandomCoefficients) -> MomentField {
    reference_moments(
        coeffs,
        &cfg.z_grid,
        cfg.t,
        cfg.reference_nodes,
        &OracleConfig::with_panels(cfg.reference_panels),
    )
}

/// Plot-ready data: exact solution surface, moment profiles, and MC error
/// profiles against the quadrature reference.
pub fn figures(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let coeffs = coefficients(cfg);
    coeffs.check_spectral_condition()?;
    let started = Instant::now();
    let mut outputs = Vec::new();

    // exact solution surface over the (z, t) grid
    let surface = exact_grid(
        cfg.a,
        cfg.nu,
        |_| 1.0,
        &cfg.z_grid,
        &cfg.t_grid,
        &OracleConfig::with_panels(4_000),
    );
    let mut surf_csv = CsvFile::new(&["z", "t", "u1", "u2"], cfg.timestamp);
    surf_csv.info(&format!(
        "exact solution surface, a={}, nu={}",
        cfg.a, cfg.nu
    ));
    write_surface(&mut surf_csv, &surface);
    outputs.push((PathBuf::from("exact_solution_surface.csv"), surf_csv));

    // moment profiles at the evaluation time: quadrature reference + one MC run
    let profile_z: Vec<f64> = if cfg.z_grid.len() > 51 {
        cfg.z_grid.iter().copied().step_by(2).collect()
    } else {
        cfg.z_grid.clone()
    };
    let ref_cfg = Resolved {
        z_grid: profile_z.clone(),
        ..cfg.clone()
    };
    let reference = reference_field(&ref_cfg, &coeffs);
    let grid = QuadratureGrid::from_step(cfg.radius, cfg.step)?;
    let mc = mc_moments(
        &coeffs,
        &MonteCarloConfig {
            realizations: cfg.realizations,
            seed: cfg.seed,
            grid,
            z_grid: profile_z.clone(),
            t: cfg.t,
        },
    )?;
    let mut prof_csv = CsvFile::new(
        &[
            "z",
            "ref_mean_u1",
            "ref_mean_u2",
            "ref_std_u1",
            "ref_std_u2",
            "mc_mean_u1",
            "mc_mean_u2",
            "mc_std_u1",
            "mc_std_u2",
        ],
        cfg.timestamp,
    );
    prof_csv.info(&format!(
        "moment profiles at t={}, K={}, R={}, h={}, seed={}",
        cfg.t, cfg.realizations, cfg.radius, cfg.step, cfg.seed
    ));
    for (i, &z) in profile_z.iter().enumerate() {
        prof_csv.row(&[
            z,
            reference.mean[i].v1,
            reference.mean[i].v2,
            reference.std[i].v1,
            reference.std[i].v2,
            mc.mean[i].v1,
            mc.mean[i].v2,
            mc.std[i].v1,
            mc.std[i].v2,
        ]);
    }
    outputs.push((PathBuf::from("moment_profiles.csv"), prof_csv));

    // MC absolute-error profiles as the realization count grows
    let mut err_k_csv = CsvFile::new(
        &[
            "K",
            "z",
            "abs_err_mean_u1",
            "abs_err_mean_u2",
            "abs_err_std_u1",
            "abs_err_std_u2",
        ],
        cfg.timestamp,
    );
    for &k in &cfg.realization_list {
        let field = mc_moments(
            &coeffs,
            &MonteCarloConfig {
                realizations: k,
                seed: cfg.seed,
                grid,
                z_grid: profile_z.clone(),
                t: cfg.t,
            },
        )?;
        for (i, &z) in profile_z.iter().enumerate() {
            err_k_csv.row(&[
                k as f64,
                z,
                (field.mean[i].v1 - reference.mean[i].v1).abs(),
                (field.mean[i].v2 - reference.mean[i].v2).abs(),
                (field.std[i].v1 - reference.std[i].v1).abs(),
                (field.std[i].v2 - reference.std[i].v2).abs(),
            ]);
        }
    }
    outputs.push((PathBuf::from("mc_error_vs_realizations.csv"), err_k_csv));

    // ... and as the truncation radius grows
    let mut err_r_csv = CsvFile::new(
        &[
            "R",
            "z",
            "abs_err_mean_u1",
            "abs_err_mean_u2",
            "abs_err_std_u1",
            "abs_err_std_u2",
        ],
        cfg.timestamp,
    );
    for &radius in &cfg.radius_list {
        let grid_r = QuadratureGrid::from_step(radius, cfg.step)?;
        let field = mc_moments(
            &coeffs,
            &MonteCarloConfig {
                realizations: cfg.realizations,
                seed: cfg.seed,
                grid: grid_r,
                z_grid: profile_z.clone(),
                t: cfg.t,
            },
        )?;
        for (i, &z) in profile_z.iter().enumerate() {
            err_r_csv.row(&[
                radius,
                z,
                (field.mean[i].v1 - reference.mean[i].v1).abs(),
                (field.mean[i].v2 - reference.mean[i].v2).abs(),
                (field.std[i].v1 - reference.std[i].v1).abs(),
                (field.std[i].v2 - reference.std[i].v2).abs(),
            ]);
        }
    }
    outputs.push((PathBuf::from("mc_error_vs_radius.csv"), err_r_csv));

    let report = ErrorReport {
        sweep_name: "figures",
        rows: vec![ReportRow {
            sweep: 0.0,
            err1: 0.0,
            err2: 0.0,
            seconds: started.elapsed().as_secs_f64(),
        }],
    };
    Ok((report, outputs))
}

/// Config-driven moments run (the `custom` experiment and the `moments`
/// subcommand): one MC estimate next to the quadrature reference.
pub fn custom_moments(cfg: &Resolved) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let coeffs = coefficients(cfg);
    coeffs.check_spectral_condition()?;
    let started = Instant::now();
    let grid = QuadratureGrid::from_step(cfg.radius, cfg.step)?;
    let field = mc_moments(
        &coeffs,
        &MonteCarloConfig {
            realizations: cfg.realizations,
            seed: cfg.seed,
            grid,
            z_grid: cfg.z_grid.clone(),
            t: cfg.t,
        },
    )?;
    let reference = reference_field(cfg, &coeffs);
    let err = field.rmse_mean(&reference)?;
    let mut csv = CsvFile::new(
        &["z", "mean_u1", "mean_u2", "std_u1", "std_u2"],
        cfg.timestamp,
    );
    csv.info(&format!(
        "MC moments: K={}, seed={}, R={}, h={}, t={}",
        cfg.realizations, cfg.seed, cfg.radius, cfg.step, cfg.t
    ));
    for (i, &z) in cfg.z_grid.iter().enumerate() {
        csv.row(&[
            z,
            field.mean[i].v1,
            field.mean[i].v2,
            field.std[i].v1,
            field.std[i].v2,
        ]);
    }
    let report = ErrorReport {
        sweep_name: "K",
        rows: vec![ReportRow {
            sweep: cfg.realizations as f64,
            err1: err.v1,
            err2: err.v2,
            seconds: started.elapsed().as_secs_f64(),
        }],
    };
    Ok((report, vec![(PathBuf::from("moments.csv"), csv)]))
}

/// Deterministic solve: point value to stdout, or a (z, t) grid CSV.
pub fn solve(cfg: &Resolved, whole_grid: bool) -> Result<Vec<(PathBuf, CsvFile)>, Error> {
    let problem = ekman(cfg)?;
    let grid = QuadratureGrid::from_step(cfg.radius, cfg.step)?;
    if !whole_grid {
        let value = midpoint_inverse(&problem, &grid, cfg.z, cfg.t);
        let exact = exact_solution(
            cfg.a,
            cfg.nu,
            |_| 1.0,
            cfg.z,
            cfg.t,
            &OracleConfig::default(),
        );
        println!(
            "u({}, {}) ~ [{:.12e}, {:.12e}]  (midpoint, R={}, h={})",
            cfg.z, cfg.t, value.v1, value.v2, cfg.radius, cfg.step
        );
        println!(
            "exact      [{:.12e}, {:.12e}]  abs err [{:.3e}, {:.3e}]",
            exact.v1,
            exact.v2,
            (value.v1 - exact.v1).abs(),
            (value.v2 - exact.v2).abs()
        );
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<Vector2>> = cfg
        .t_grid
        .par_iter()
        .map(|&t| {
            if t == 0.0 {
                return vec![Vector2::zero(); cfg.z_grid.len()];
            }
            let sweep = cospde::kernel::kernel_sweep(&problem, &grid, t, 1);
            cfg.z_grid
                .iter()
                .map(|&z| cospde::quadrature::midpoint_inverse_with_sweep(&grid, &sweep, z))
                .collect()
        })
        .collect();
    let mut csv = CsvFile::new(&["z", "t", "u1", "u2"], cfg.timestamp);
    csv.info(&format!(
        "midpoint solution, a={}, nu={}, R={}, h={}",
        cfg.a, cfg.nu, cfg.radius, cfg.step
    ));
    for (ti, &t) in cfg.t_grid.iter().enumerate() {
        for (zi, &z) in cfg.z_grid.iter().enumerate() {
            csv.row(&[z, t, rows[ti][zi].v1, rows[ti][zi].v2]);
        }
    }
    Ok(vec![(PathBuf::from("solution.csv"), csv)])
}

/// Truncation-radius advisor for a target solution-error tolerance.
pub fn select_radius_report(
    cfg: &Resolved,
    tol: f64,
    f_sup: f64,
    g_sup: f64,
) -> Result<f64, Error> {
    let problem = ekman(cfg)?;
    let radius = cospde::quadrature::select_radius(&problem, cfg.t, f_sup, g_sup, tol)?;
    let bound = truncation_bound(&problem, radius, cfg.t, f_sup, g_sup);
    println!(
        "R = {radius} keeps the tail bound at {:.3e} (J1 {:.3e} + J2 {:.3e} scaled by 2/pi) <= tol {tol:.3e}",
        bound.total() * 2.0 / std::f64::consts::PI,
        bound.bound_j1,
        bound.bound_j2,
    );
    Ok(radius)
}

fn write_surface(csv: &mut CsvFile, field: &SolutionField) {
    for (ti, &t) in field.t_grid.iter().enumerate() {
        for (zi, &z) in field.z_grid.iter().enumerate() {
            let v = field.at(ti, zi);
            csv.row(&[z, t, v.v1, v.v2]);
        }
    }
}

fn report_csv(report: &ErrorReport, columns: &[&str], title: &str, cfg: &Resolved) -> CsvFile {
    let mut csv = CsvFile::new(columns, cfg.timestamp);
    csv.info(title);
    let timings: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("{:.4}", r.seconds))
        .collect();
    csv.info(&format!("row_seconds,{}", timings.join(",")));
    for row in &report.rows {
        csv.row(&[row.sweep, row.err1, row.err2]);
    }
    csv
}

/// Dispatch by experiment id; returns the report and the files written.
pub fn run_experiment(
    id: &str,
    cfg: &Resolved,
) -> Result<(ErrorReport, Vec<(PathBuf, CsvFile)>), Error> {
    let (report, files) = match id {
        "table1" => table1(cfg)?,
        "table2" => table2(cfg)?,
        "table3" => table3(cfg)?,
        "table4" => table4(cfg)?,
        "table5" => table5(cfg)?,
        "table6" => table6(cfg)?,
        "table7" => table7(cfg)?,
        "table8" => table8(cfg)?,
        "figures" => figures(cfg)?,
        "custom" => custom_moments(cfg)?,
        // the caller validates against config::EXPERIMENTS
        other => unreachable!("unvalidated experiment id '{other}'"),
    };
    report.print(id);
    Ok((report, files))
}
