//! Command-line driver: named table/figure experiments, single
//! deterministic solves, Monte Carlo moment runs, and the truncation-radius
//! advisor.
//!
//! Exit codes: 0 success, 2 configuration error, 3 hypothesis-check failure
//! (spectral or moment condition), 4 numerical failure.

// `!(x > 0.0)` guards reject NaN as well as nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod csvout;
mod experiments;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cospde::error::Error;

use config::{ConfigError, FileConfig, Resolved, EXPERIMENTS};

#[derive(Parser)]
#[command(
    name = "cospde",
    about = "Coupled parabolic half-line systems: cosine-transform inversion and Monte Carlo moments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// TOML configuration file; omitted fields use experiment defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the Monte Carlo seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker thread count (defaults to all cores). Results are
    /// bit-identical regardless of this setting.
    #[arg(long)]
    threads: Option<usize>,
    /// Suppress the timestamp and timing comment lines, making CSV output
    /// byte-identical across runs.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment (table1..table8, figures, custom).
    Run {
        /// Experiment id; may also come from the config file's
        /// `experiment` key.
        experiment: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Deterministic solve at a point (default) or over the whole grid.
    Solve {
        #[command(flatten)]
        common: CommonOpts,
        /// Reaction strength.
        #[arg(long)]
        a: Option<f64>,
        /// Diffusion coefficient.
        #[arg(long)]
        nu: Option<f64>,
        /// Truncation radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Frequency step.
        #[arg(long)]
        step: Option<f64>,
        /// Evaluation depth.
        #[arg(long)]
        z: Option<f64>,
        /// Evaluation time.
        #[arg(long)]
        t: Option<f64>,
        /// Solve the full (z, t) grid and write solution.csv.
        #[arg(long)]
        grid: bool,
    },
    /// Monte Carlo moment estimation over the configured coefficient laws.
    Moments {
        #[command(flatten)]
        common: CommonOpts,
        /// Realization count.
        #[arg(long)]
        realizations: Option<usize>,
    },
    /// Pick the smallest truncation radius meeting an error tolerance.
    #[command(name = "select-R", alias = "select-r")]
    SelectRadius {
        #[command(flatten)]
        common: CommonOpts,
        /// Target absolute solution-error tolerance.
        #[arg(long)]
        tol: f64,
        /// Supremum of the transformed initial data.
        #[arg(long, default_value_t = 0.0)]
        f_sup: f64,
        /// Supremum of the boundary flux magnitude.
        #[arg(long, default_value_t = 1.0)]
        g_sup: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(Failure::Hypothesis(e)) => {
            eprintln!("hypothesis check failed: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(4)
        }
        Err(Failure::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(4)
        }
    }
}

enum Failure {
    Config(ConfigError),
    Hypothesis(Error),
    Numerical(Error),
    Io(std::io::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SpectralConditionViolated(_) => Failure::Hypothesis(e),
            other => Failure::Numerical(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn resolve(common: &CommonOpts, experiment: &str) -> Result<Resolved, Failure> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut cfg = file.resolve(experiment)?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    cfg.timestamp = !common.no_timestamp;
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError(vec![format!("--threads: {e}")]))?;
    }
    Ok(cfg)
}

fn write_outputs(cfg: &Resolved, files: Vec<(PathBuf, csvout::CsvFile)>) -> Result<(), Failure> {
    for (name, csv) in files {
        let path = csv.write_to(&cfg.out_dir, name.to_str().expect("utf8 name"))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run { experiment, common } => {
            let from_file = match &common.config {
                Some(path) => FileConfig::load(path)?.experiment,
                None => None,
            };
            let experiment = experiment.or(from_file).ok_or_else(|| {
                ConfigError(vec![
                    "no experiment named on the command line or in the config file".into(),
                ])
            })?;
            if !EXPERIMENTS.contains(&experiment.as_str()) {
                return Err(ConfigError(vec![format!(
                    "unknown experiment '{experiment}'; expected one of {EXPERIMENTS:?}"
                )])
                .into());
            }
            let cfg = resolve(&common, &experiment)?;
            let (_report, files) = experiments::run_experiment(&experiment, &cfg)?;
            write_outputs(&cfg, files)
        }
        Command::Solve {
            common,
            a,
            nu,
            radius,
            step,
            z,
            t,
            grid,
        } => {
            let mut cfg = resolve(&common, "solve")?;
            apply_solve_overrides(&mut cfg, a, nu, radius, step, z, t)?;
            let files = experiments::solve(&cfg, grid)?;
            write_outputs(&cfg, files)
        }
        Command::Moments {
            common,
            realizations,
        } => {
            let mut cfg = resolve(&common, "custom")?;
            if let Some(k) = realizations {
                if k < 2 {
                    return Err(ConfigError(vec![format!(
                        "--realizations must be at least 2, got {k}"
                    )])
                    .into());
                }
                cfg.realizations = k;
            }
            let (_report, files) = experiments::custom_moments(&cfg)?;
            write_outputs(&cfg, files)
        }
        Command::SelectRadius {
            common,
            tol,
            f_sup,
            g_sup,
        } => {
            if !(tol > 0.0) {
                return Err(ConfigError(vec![format!("--tol must be positive, got {tol}")]).into());
            }
            if f_sup < 0.0 || g_sup < 0.0 {
                return Err(
                    ConfigError(vec!["--f-sup and --g-sup must be nonnegative".into()]).into(),
                );
            }
            let cfg = resolve(&common, "select-R")?;
            experiments::select_radius_report(&cfg, tol, f_sup, g_sup)?;
            Ok(())
        }
    }
}

fn apply_solve_overrides(
    cfg: &mut Resolved,
    a: Option<f64>,
    nu: Option<f64>,
    radius: Option<f64>,
    step: Option<f64>,
    z: Option<f64>,
    t: Option<f64>,
) -> Result<(), Failure> {
    let mut issues = Vec::new();
    if let Some(v) = a {
        if v > 0.0 {
            cfg.a = v;
        } else {
            issues.push(format!("--a must be positive, got {v}"));
        }
    }
    if let Some(v) = nu {
        if v > 0.0 {
            cfg.nu = v;
        } else {
            issues.push(format!("--nu must be positive, got {v}"));
        }
    }
    if let Some(v) = radius {
        if v > 0.0 {
            cfg.radius = v;
        } else {
            issues.push(format!("--radius must be positive, got {v}"));
        }
    }
    if let Some(v) = step {
        if v > 0.0 && v <= cfg.radius {
            cfg.step = v;
        } else {
            issues.push(format!("--step must lie in (0, radius], got {v}"));
        }
    }
    if let Some(v) = z {
        if v >= 0.0 {
            cfg.z = v;
        } else {
            issues.push(format!("--z must be nonnegative, got {v}"));
        }
    }
    if let Some(v) = t {
        if v > 0.0 {
            cfg.t = v;
        } else {
            issues.push(format!("--t must be positive, got {v}"));
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(ConfigError(issues).into())
    }
}
