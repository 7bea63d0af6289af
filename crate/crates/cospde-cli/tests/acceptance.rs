//! Acceptance suite: each test is one release criterion, printed as its own
//! pass/fail line by the harness. Reference values are the published error
//! tables this solver is validated against; bands and tolerances are fixed
//! here, not tuned at runtime. Run with
//! `cargo test -p cospde-cli --test acceptance --release -- --nocapture`
//! to see the measured numbers next to every expectation.

use std::time::Instant;

use cospde::kernel::kernel_value;
use cospde::linalg::{log_norm, mat_exp, symmetric_eigenvalues, symmetric_part, Matrix2, Vector2};
use cospde::oracle::{exact_grid, exact_solution, OracleConfig};
use cospde::quadrature::{
    gauss_laguerre_inverse, midpoint_inverse, midpoint_inverse_legacy_with_sweep,
    midpoint_inverse_with_sweep, truncation_bound, GaussLaguerreRule, QuadratureGrid,
};
use cospde::stochastic::{
    mc_moments, reference_moments, MonteCarloConfig, RandomCoefficients, Substream,
    TruncatedDistribution,
};
use cospde::CoupledProblem;

const EVAL_Z: f64 = 5.0;
const EVAL_T: f64 = 1.0;

fn benchmark_coefficients() -> RandomCoefficients {
    RandomCoefficients::new(
        TruncatedDistribution::normal(2.0, 0.1, 0.8, 1.2).unwrap(),
        TruncatedDistribution::gamma(4.0, 2.0, 0.5, 1.5).unwrap(),
    )
}

fn rel_dev(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Legacy-compatible point evaluation used by the tabulated comparisons.
fn legacy_point(problem: &CoupledProblem, radius: f64, step: f64, z: f64, t: f64) -> Vector2 {
    let grid = QuadratureGrid::from_step(radius, step).unwrap();
    let ext = grid.extended(1);
    let sweep: Vec<Vector2> = ext
        .nodes()
        .map(|omega| kernel_value(problem, omega, t, 1))
        .collect();
    midpoint_inverse_legacy_with_sweep(&grid, &sweep, z)
}

#[test]
fn criterion_1_deterministic_midpoint_accuracy_radius_sweep() {
    let started = Instant::now();
    // (R, abs err u1, abs err u2) at z = 5, t = 1 with h = 0.05
    let reference_rows = [
        (5.0, 2.2187e-4, 6.0459e-6),
        (10.0, 6.6113e-5, 1.1396e-6),
        (15.0, 9.6916e-5, 4.9150e-7),
        (20.0, 9.3665e-5, 2.4768e-7),
        (25.0, 8.4522e-5, 1.3928e-7),
        (30.0, 7.4942e-5, 8.4709e-8),
    ];
    let problem = CoupledProblem::ekman(1.0, 1.0).unwrap();
    let exact = exact_solution(1.0, 1.0, |_| 1.0, EVAL_Z, EVAL_T, &OracleConfig::default());
    for (radius, want1, want2) in reference_rows {
        let approx = legacy_point(&problem, radius, 0.05, EVAL_Z, EVAL_T);
        let err1 = (approx.v1 - exact.v1).abs();
        let err2 = (approx.v2 - exact.v2).abs();
        println!(
            "criterion 1: R={radius} AbsErr(u1)={err1:.4e} (ref {want1:.4e}, dev {:.2}%) \
             AbsErr(u2)={err2:.4e} (ref {want2:.4e}, dev {:.2}%)",
            100.0 * rel_dev(err1, want1),
            100.0 * rel_dev(err2, want2)
        );
        assert!(rel_dev(err1, want1) <= 0.01, "u1 row R={radius} off by >1%");
        assert!(rel_dev(err2, want2) <= 0.01, "u2 row R={radius} off by >1%");
    }
    println!(
        "criterion 1 (midpoint radius sweep reproduces reference table): PASS in {:.2} s",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_2_step_size_sweep_including_nonmonotone_row() {
    let started = Instant::now();
    // (h, abs err u1, abs err u2) at R = 20
    let reference_rows = [
        (0.2, 1.4793e-4, 3.4924e-7),
        (0.1, 1.4441e-5, 5.0984e-8),
        (0.05, 9.3665e-5, 2.4768e-7),
        (0.025, 1.3112e-4, 3.4100e-7),
        (0.0125, 1.4912e-4, 3.8592e-7),
    ];
    let problem = CoupledProblem::ekman(1.0, 1.0).unwrap();
    let exact = exact_solution(1.0, 1.0, |_| 1.0, EVAL_Z, EVAL_T, &OracleConfig::default());
    let mut errs1 = Vec::new();
    for (step, want1, want2) in reference_rows {
        let approx = legacy_point(&problem, 20.0, step, EVAL_Z, EVAL_T);
        let err1 = (approx.v1 - exact.v1).abs();
        let err2 = (approx.v2 - exact.v2).abs();
        println!(
            "criterion 2: h={step} AbsErr(u1)={err1:.4e} (ref {want1:.4e}, dev {:.2}%) \
             AbsErr(u2)={err2:.4e} (ref {want2:.4e}, dev {:.2}%)",
            100.0 * rel_dev(err1, want1),
            100.0 * rel_dev(err2, want2)
        );
        assert!(rel_dev(err1, want1) <= 0.01, "u1 row h={step} off by >1%");
        assert!(rel_dev(err2, want2) <= 0.01, "u2 row h={step} off by >1%");
        errs1.push(err1);
    }
    // the non-monotone step behavior: h = 0.1 beats both neighbors
    assert!(errs1[1] < errs1[0] && errs1[1] < errs1[2]);
    println!(
        "criterion 2 (step sweep with non-monotone h behavior): PASS in {:.2} s",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_3_domain_rmse_radius_sweep() {
    let started = Instant::now();
    // (R, RMSE u1, RMSE u2) over z in [0,5] x t in [0,1]
    let reference_rows = [
        (5.0, 1.9717e-2, 4.3759e-4),
        (10.0, 8.0645e-3, 4.2821e-5),
        (15.0, 4.9310e-3, 1.0860e-5),
        (20.0, 3.5510e-3, 4.1179e-6),
        (25.0, 2.7871e-3, 1.9559e-6),
        (30.0, 2.3023e-3, 1.0771e-6),
    ];
    let z_grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.05).collect();
    let t_grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.01).collect();
    let problem = CoupledProblem::ekman(1.0, 1.0).unwrap();
    let exact = exact_grid(
        1.0,
        1.0,
        |_| 1.0,
        &z_grid,
        &t_grid,
        &OracleConfig::with_panels(4_000),
    );
    for (radius, want1, want2) in reference_rows {
        let grid = QuadratureGrid::from_step(radius, 0.05).unwrap();
        let (mut acc1, mut acc2, mut count) = (0.0, 0.0, 0.0);
        for (ti, &t) in t_grid.iter().enumerate() {
            let values: Vec<Vector2> = if t == 0.0 {
                vec![Vector2::zero(); z_grid.len()]
            } else {
                let ext = grid.extended(1);
                let sweep: Vec<Vector2> = ext
                    .nodes()
                    .map(|omega| kernel_value(&problem, omega, t, 1))
                    .collect();
                z_grid
                    .iter()
                    .map(|&z| midpoint_inverse_legacy_with_sweep(&grid, &sweep, z))
                    .collect()
            };
            for (zi, v) in values.iter().enumerate() {
                let d = *v - exact.at(ti, zi);
                acc1 += d.v1 * d.v1;
                acc2 += d.v2 * d.v2;
                count += 1.0;
            }
        }
        let rmse1 = (acc1 / count).sqrt();
        let rmse2 = (acc2 / count).sqrt();
        println!(
            "criterion 3: R={radius} RMSE(u1)={rmse1:.4e} (ref {want1:.4e}, dev {:.2}%) \
             RMSE(u2)={rmse2:.4e} (ref {want2:.4e}, dev {:.2}%)",
            100.0 * rel_dev(rmse1, want1),
            100.0 * rel_dev(rmse2, want2)
        );
        assert!(
            rel_dev(rmse1, want1) <= 0.01,
            "RMSE(u1) row R={radius} off by >1%"
        );
        assert!(
            rel_dev(rmse2, want2) <= 0.01,
            "RMSE(u2) row R={radius} off by >1%"
        );
    }
    println!(
        "criterion 3 (domain RMSE sweep): PASS in {:.2} s",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_4_gauss_laguerre_failure() {
    let started = Instant::now();
    let reference_u1 = [
        2.7254e-1, 7.4014e-1, 2.2645e-2, 4.4318e-1, 4.5831e-1, 3.6717e-1, 5.1360e-1, 1.9483e-3,
        1.3911e-1, 4.8348e-1, 3.3161e-1, 2.1783e-1, 1.4817e-1, 2.3801e-1, 2.8347e-1,
    ];
    let problem = CoupledProblem::ekman(1.0, 1.0).unwrap();
    let exact = exact_solution(1.0, 1.0, |_| 1.0, EVAL_Z, EVAL_T, &OracleConfig::default());
    let mut min_err = f64::INFINITY;
    for (idx, want) in reference_u1.iter().enumerate() {
        let degree = idx + 1;
        let rule = GaussLaguerreRule::new(degree).unwrap();
        let approx = gauss_laguerre_inverse(&problem, &rule, EVAL_Z, EVAL_T);
        let err = (approx.v1 - exact.v1).abs();
        println!(
            "criterion 4: M={degree} AbsErr(u1)={err:.4e} (ref {want:.4e}, dev {:.2}%)",
            100.0 * rel_dev(err, *want)
        );
        assert!(rel_dev(err, *want) <= 0.05, "degree {degree} off by >5%");
        min_err = min_err.min(err);
    }
    assert!(
        min_err >= 1e-3,
        "best Gauss-Laguerre error {min_err:e} suspiciously small"
    );
    let midpoint_err = {
        let approx = legacy_point(&problem, 20.0, 0.05, EVAL_Z, EVAL_T);
        (approx.v1 - exact.v1).abs()
    };
    assert!(
        min_err >= 10.0 * midpoint_err,
        "separation under 10x: GL best {min_err:e} vs midpoint {midpoint_err:e}"
    );
    println!(
        "criterion 4 (Gauss-Laguerre fails by >=10x vs midpoint): PASS in {:.2} s \
         (GL best {min_err:.3e}, midpoint {midpoint_err:.3e})",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_5_truncation_bound_dominates_measured_tail() {
    let started = Instant::now();
    let problem = CoupledProblem::ekman(1.0, 1.0).unwrap();
    let step = 0.05;
    let reference_grid = QuadratureGrid::from_step(200.0, step).unwrap();
    let sweep: Vec<Vector2> = reference_grid
        .nodes()
        .map(|omega| kernel_value(&problem, omega, EVAL_T, 1))
        .collect();
    let far = midpoint_inverse_with_sweep(&reference_grid, &sweep, EVAL_Z);
    for radius in [5.0, 10.0, 20.0] {
        let grid = QuadratureGrid::from_step(radius, step).unwrap();
        let n = grid.len();
        let near = midpoint_inverse_with_sweep(&grid, &sweep[..n], EVAL_Z);
        let measured = (far - near).norm_inf();
        let bound = truncation_bound(&problem, radius, EVAL_T, 0.0, 1.0);
        let budget = bound.total() * 2.0 / std::f64::consts::PI;
        println!("criterion 5: R={radius} measured tail {measured:.4e} <= bound {budget:.4e}");
        assert!(
            measured <= budget,
            "tail {measured:e} exceeds erfc bound {budget:e} at R={radius}"
        );
    }
    println!(
        "criterion 5 (erfc truncation bound dominates measured tail): PASS in {:.2} s",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_6_monte_carlo_moment_bands() {
    let started = Instant::now();
    let coeffs = benchmark_coefficients();
    let z_grid: Vec<f64> = (0..51).map(|i| i as f64 * 0.1).collect();
    let reference = reference_moments(
        &coeffs,
        &z_grid,
        EVAL_T,
        48,
        &OracleConfig::with_panels(2_000),
    );
    let grid = QuadratureGrid::from_step(20.0, 0.05).unwrap();
    let field = mc_moments(
        &coeffs,
        &MonteCarloConfig {
            realizations: 1600,
            seed: 20_260_810,
            grid,
            z_grid: z_grid.clone(),
            t: EVAL_T,
        },
    )
    .unwrap();
    let mean_err = field.rmse_mean(&reference).unwrap();
    let std_err = field.rmse_std(&reference).unwrap();
    println!(
        "criterion 6: K=1600 RMSE(mean u1)={:.4e} (band [3e-3, 8e-3], ref 4.9603e-3)",
        mean_err.v1
    );
    println!(
        "criterion 6: K=1600 RMSE(std u1)={:.4e} (< 5e-3, ref 5.0547e-4), \
         RMSE(mean u2)={:.4e} (< 5e-3, ref 4.5712e-4)",
        std_err.v1, mean_err.v2
    );
    assert!((3e-3..=8e-3).contains(&mean_err.v1));
    assert!(std_err.v1 < 5e-3);
    assert!(mean_err.v2 < 5e-3);

    // radius sweep at fixed K: first-component RMSE strictly decreasing
    let mut previous = f64::INFINITY;
    for radius in [5.0, 10.0, 15.0, 20.0, 25.0] {
        let grid = QuadratureGrid::from_step(radius, 0.05).unwrap();
        let field = mc_moments(
            &coeffs,
            &MonteCarloConfig {
                realizations: 1600,
                seed: 20_260_810,
                grid,
                z_grid: z_grid.clone(),
                t: EVAL_T,
            },
        )
        .unwrap();
        let err = field.rmse_mean(&reference).unwrap().v1;
        println!("criterion 6: R={radius} RMSE(mean u1)={err:.4e}");
        assert!(
            err < previous,
            "RMSE(mean u1) not strictly decreasing at R={radius}"
        );
        previous = err;
    }
    println!(
        "criterion 6 (Monte Carlo moment bands + radius trend): PASS in {:.2} s",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_7_property_suites() {
    let started = Instant::now();
    let mut stream = Substream::new(0xACCE97, 0);
    let mut uniform = move |lo: f64, hi: f64| lo + (hi - lo) * stream.next_u01();

    // growth bound and spectral-shift inequality on 1000 draws each
    for _ in 0..1000 {
        let p = Matrix2::new(
            uniform(-3.0, 3.0),
            uniform(-3.0, 3.0),
            uniform(-3.0, 3.0),
            uniform(-3.0, 3.0),
        );
        let mu = log_norm(&p);
        for t in [0.1, 0.5, 1.0, 2.0] {
            assert!(mat_exp(&(p * t)).norm_spectral() <= (t * mu).exp() * (1.0 + 1e-9));
        }

        let a = Matrix2::new(
            uniform(-3.0, 3.0),
            uniform(-3.0, 3.0),
            uniform(-3.0, 3.0),
            uniform(-3.0, 3.0),
        );
        let raw = Matrix2::new(
            uniform(-1.0, 1.0),
            uniform(-1.0, 1.0),
            uniform(-1.0, 1.0),
            uniform(-1.0, 1.0),
        );
        let min_eig = symmetric_eigenvalues(&symmetric_part(&raw))
            .unwrap()
            .lambda_min;
        let b_mat = raw + Matrix2::scaled_identity(0.2 - min_eig.min(0.0));
        let b = symmetric_eigenvalues(&symmetric_part(&b_mat))
            .unwrap()
            .lambda_min;
        for omega in [0.1, 1.0, 5.0, 20.0] {
            let lhs = log_norm(&(a - b_mat * (omega * omega)));
            assert!(lhs <= log_norm(&a) - b * omega * omega + 1e-9);
        }
    }
    println!("criterion 7: growth bound + spectral shift on 1000 draws ok");

    // degenerate-distribution Monte Carlo equals the deterministic solve
    let degenerate = RandomCoefficients::new(
        TruncatedDistribution::point_mass(1.0),
        TruncatedDistribution::point_mass(1.0),
    );
    let grid = QuadratureGrid::from_step(10.0, 0.05).unwrap();
    let z_grid: Vec<f64> = (0..11).map(|i| i as f64 * 0.5).collect();
    let field = mc_moments(
        &degenerate,
        &MonteCarloConfig {
            realizations: 2,
            seed: 7,
            grid,
            z_grid: z_grid.clone(),
            t: EVAL_T,
        },
    )
    .unwrap();
    let problem = CoupledProblem::ekman(1.0, 1.0).unwrap();
    for (i, &z) in z_grid.iter().enumerate() {
        let deterministic = midpoint_inverse(&problem, &grid, z, EVAL_T);
        assert!((field.mean[i] - deterministic).norm_inf() <= 1e-12);
        assert!(field.std[i].norm_inf() <= 1e-12);
    }
    println!("criterion 7: degenerate MC equals deterministic solve to 1e-12 ok");

    // variance double-sum identity on a 3-node grid with K = 50
    {
        let coeffs = benchmark_coefficients();
        let small_grid = QuadratureGrid::new(0.9, 3).unwrap();
        let nodes: Vec<f64> = small_grid.nodes().collect();
        let k = 50;
        let z = 1.7;
        let kernels: Vec<Vec<Vector2>> = (0..k as u64)
            .map(|real| {
                let (a, nu) = coeffs.draw(31, real);
                let p = CoupledProblem::ekman(a, nu).unwrap();
                nodes
                    .iter()
                    .map(|&w| kernel_value(&p, w, EVAL_T, 1))
                    .collect()
            })
            .collect();
        let scale = 2.0 * small_grid.step() / std::f64::consts::PI;
        let kf = k as f64;
        let sums: Vec<Vector2> = kernels
            .iter()
            .map(|vals| {
                let mut acc = Vector2::zero();
                for (&w, v) in nodes.iter().zip(vals) {
                    acc = acc + *v * (w * z).cos();
                }
                acc * scale
            })
            .collect();
        let mean = sums.iter().fold(Vector2::zero(), |acc, v| acc + *v) * (1.0 / kf);
        let var_direct = sums.iter().fold(Vector2::zero(), |acc, v| {
            let d = *v - mean;
            acc + Vector2::new(d.v1 * d.v1, d.v2 * d.v2)
        }) * (1.0 / kf);
        let node_mean: Vec<Vector2> = (0..nodes.len())
            .map(|j| kernels.iter().fold(Vector2::zero(), |acc, v| acc + v[j]) * (1.0 / kf))
            .collect();
        let mut var_double = Vector2::zero();
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                let mut e_pq = Vector2::zero();
                for vals in &kernels {
                    e_pq = e_pq + Vector2::new(vals[i].v1 * vals[j].v1, vals[i].v2 * vals[j].v2);
                }
                let cov = e_pq * (1.0 / kf)
                    - Vector2::new(
                        node_mean[i].v1 * node_mean[j].v1,
                        node_mean[i].v2 * node_mean[j].v2,
                    );
                var_double = var_double + cov * ((nodes[i] * z).cos() * (nodes[j] * z).cos());
            }
        }
        var_double = var_double * (scale * scale);
        assert!((var_direct - var_double).norm_inf() <= 1e-12);
    }
    println!("criterion 7: variance double-sum identity to 1e-12 ok");

    // oracle PDE residual refines at second order
    {
        let cfg = OracleConfig::with_panels(40_000);
        let a_mat = Matrix2::new(0.0, 1.0, -1.0, 0.0);
        let residual = |delta: f64| -> f64 {
            let mut worst: f64 = 0.0;
            for (z, t) in [(1.0, 0.7), (2.0, 0.8), (3.0, 0.6)] {
                let u = |zz: f64, tt: f64| exact_solution(1.0, 1.0, |_| 1.0, zz, tt, &cfg);
                let u_t = (u(z, t + delta) - u(z, t - delta)) * (1.0 / (2.0 * delta));
                let u_zz =
                    (u(z + delta, t) - u(z, t) * 2.0 + u(z - delta, t)) * (1.0 / (delta * delta));
                worst = worst.max((u_t - a_mat.mul_vec(u(z, t)) - u_zz).norm_inf());
            }
            worst
        };
        let order = (residual(0.1) / residual(0.05)).log2();
        println!("criterion 7: oracle PDE-residual refinement order {order:.2}");
        assert!(order >= 1.8, "refinement order {order:.3} below 1.8");
    }

    // seed and thread-count determinism: byte-identical CSV from the CLI
    {
        let bin = env!("CARGO_BIN_EXE_cospde");
        let tmp = std::env::temp_dir().join("cospde-acceptance-determinism");
        let _ = std::fs::remove_dir_all(&tmp);
        let run = |threads: &str, sub: &str| -> Vec<u8> {
            let dir = tmp.join(format!("t{threads}"));
            let status = std::process::Command::new(bin)
                .args([
                    "moments",
                    "--realizations",
                    "64",
                    "--seed",
                    "42",
                    "--threads",
                    threads,
                    "--no-timestamp",
                    "--out",
                ])
                .arg(&dir)
                .status()
                .expect("spawn cospde");
            assert!(status.success(), "moments run failed");
            std::fs::read(dir.join(sub)).expect("read moments.csv")
        };
        let single = run("1", "moments.csv");
        let multi = run("4", "moments.csv");
        assert_eq!(single, multi, "CSV differs across thread counts");
        println!("criterion 7: thread-count determinism (byte-identical CSV) ok");
    }

    println!(
        "criterion 7 (property suites): PASS in {:.2} s",
        started.elapsed().as_secs_f64()
    );
}
