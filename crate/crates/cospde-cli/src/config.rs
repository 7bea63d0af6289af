//! Declarative experiment configuration: TOML file plus per-experiment
//! defaults, with command-line overrides applied last.

use std::fmt;
use std::path::PathBuf;

use cospde::stochastic::TruncatedDistribution;
use serde::Deserialize;

/// Raw TOML shape; every field optional so a config names only what it
/// overrides.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<String>,
    #[serde(default)]
    pub problem: ProblemSection,
    #[serde(default)]
    pub random: RandomSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub mc: McSection,
    #[serde(default)]
    pub eval: EvalSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub a: Option<f64>,
    pub nu: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSection {
    pub a: Option<DistSpec>,
    pub nu: Option<DistSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistSpec {
    pub kind: String,
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
    pub shape: Option<f64>,
    pub rate: Option<f64>,
    pub scale: Option<f64>,
    pub value: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub radius: Option<f64>,
    pub step: Option<f64>,
    pub radius_list: Option<Vec<f64>>,
    pub step_list: Option<Vec<f64>>,
    pub degree_list: Option<Vec<usize>>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    pub realizations: Option<usize>,
    pub realization_list: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub reference_nodes: Option<usize>,
    pub reference_panels: Option<usize>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalSection {
    pub z: Option<f64>,
    pub t: Option<f64>,
    pub z_start: Option<f64>,
    pub z_stop: Option<f64>,
    pub z_step: Option<f64>,
    pub t_start: Option<f64>,
    pub t_stop: Option<f64>,
    pub t_step: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

/// Field-level validation problems, reported together.
#[derive(Debug)]
pub struct ConfigError(pub Vec<String>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "configuration invalid:")?;
        for issue in &self.0 {
            writeln!(f, "  - {issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

/// Fully-resolved experiment settings.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub a: f64,
    pub nu: f64,
    pub a_dist: TruncatedDistribution,
    pub nu_dist: TruncatedDistribution,
    pub radius: f64,
    pub step: f64,
    pub radius_list: Vec<f64>,
    pub step_list: Vec<f64>,
    pub degree_list: Vec<usize>,
    pub realizations: usize,
    pub realization_list: Vec<usize>,
    pub seed: u64,
    pub reference_nodes: usize,
    pub reference_panels: usize,
    pub z: f64,
    pub t: f64,
    pub z_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub out_dir: PathBuf,
    pub timestamp: bool,
}

fn range_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step).round() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

fn dist_from_spec(
    spec: &DistSpec,
    field: &str,
    issues: &mut Vec<String>,
) -> Option<TruncatedDistribution> {
    let lo = spec.lo;
    let hi = spec.hi;
    let mk = |r: Result<TruncatedDistribution, cospde::Error>, issues: &mut Vec<String>| match r {
        Ok(d) => Some(d),
        Err(e) => {
            issues.push(format!("{field}: {e}"));
            None
        }
    };
    match spec.kind.as_str() {
        "normal" => {
            let (Some(mean), Some(std_dev), Some(lo), Some(hi)) = (spec.mean, spec.std_dev, lo, hi)
            else {
                issues.push(format!("{field}: normal needs mean, std_dev, lo, hi"));
                return None;
            };
            mk(TruncatedDistribution::normal(mean, std_dev, lo, hi), issues)
        }
        "gamma" => {
            let (Some(shape), Some(lo), Some(hi)) = (spec.shape, lo, hi) else {
                issues.push(format!(
                    "{field}: gamma needs shape, lo, hi and rate or scale"
                ));
                return None;
            };
            match (spec.rate, spec.scale) {
                (Some(rate), None) => mk(TruncatedDistribution::gamma(shape, rate, lo, hi), issues),
                (None, Some(scale)) => mk(
                    TruncatedDistribution::gamma_shape_scale(shape, scale, lo, hi),
                    issues,
                ),
                _ => {
                    issues.push(format!("{field}: gamma needs exactly one of rate or scale"));
                    None
                }
            }
        }
        "point" => {
            let Some(value) = spec.value else {
                issues.push(format!("{field}: point needs value"));
                return None;
            };
            Some(TruncatedDistribution::point_mass(value))
        }
        other => {
            issues.push(format!(
                "{field}: unknown kind '{other}' (normal|gamma|point)"
            ));
            None
        }
    }
}

/// The two coefficient laws of the reference random experiment.
fn default_random() -> (TruncatedDistribution, TruncatedDistribution) {
    (
        TruncatedDistribution::normal(2.0, 0.1, 0.8, 1.2).expect("valid"),
        TruncatedDistribution::gamma(4.0, 2.0, 0.5, 1.5).expect("valid"),
    )
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(vec![format!("cannot read {}: {e}", path.display())]))?;
        toml::from_str(&text).map_err(|e| ConfigError(vec![format!("TOML parse: {e}")]))
    }

    /// Fills experiment defaults, applies file values, validates.
    pub fn resolve(&self, experiment: &str) -> Result<Resolved, ConfigError> {
        let mut issues = Vec::new();

        let (a_default, nu_default) = (1.0, 1.0);
        let a = self.problem.a.unwrap_or(a_default);
        let nu = self.problem.nu.unwrap_or(nu_default);
        if !(a > 0.0) {
            issues.push(format!("problem.a must be positive, got {a}"));
        }
        if !(nu > 0.0) {
            issues.push(format!("problem.nu must be positive, got {nu}"));
        }

        let (a_dist_default, nu_dist_default) = default_random();
        let a_dist = match &self.random.a {
            Some(spec) => dist_from_spec(spec, "random.a", &mut issues),
            None => Some(a_dist_default),
        };
        let nu_dist = match &self.random.nu {
            Some(spec) => dist_from_spec(spec, "random.nu", &mut issues),
            None => Some(nu_dist_default),
        };

        let radius = self.grid.radius.unwrap_or(20.0);
        let step = self.grid.step.unwrap_or(0.05);
        if !(radius > 0.0) {
            issues.push(format!("grid.radius must be positive, got {radius}"));
        }
        if !(step > 0.0) || step > radius {
            issues.push(format!("grid.step must lie in (0, radius], got {step}"));
        }
        // the radius sweeps of the moment tables stop at 25
        let radius_default: Vec<f64> = if experiment == "table7" || experiment == "table8" {
            vec![5.0, 10.0, 15.0, 20.0, 25.0]
        } else {
            vec![5.0, 10.0, 15.0, 20.0, 25.0, 30.0]
        };
        let radius_list = self.grid.radius_list.clone().unwrap_or(radius_default);
        if radius_list.is_empty() || radius_list.iter().any(|&r| r <= 0.0) {
            issues.push("grid.radius_list must be nonempty and positive".into());
        }
        let step_list = self
            .grid
            .step_list
            .clone()
            .unwrap_or_else(|| vec![0.2, 0.1, 0.05, 0.025, 0.0125]);
        if step_list.is_empty() || step_list.iter().any(|&h| h <= 0.0) {
            issues.push("grid.step_list must be nonempty and positive".into());
        }
        let degree_list = self
            .grid
            .degree_list
            .clone()
            .unwrap_or_else(|| (1..=15).collect());
        if degree_list.is_empty() || degree_list.iter().any(|&m| m == 0 || m > 64) {
            issues.push("grid.degree_list entries must lie in 1..=64".into());
        }

        let realizations = self.mc.realizations.unwrap_or(1600);
        if realizations < 2 {
            issues.push(format!(
                "mc.realizations must be at least 2, got {realizations}"
            ));
        }
        let realization_list = self
            .mc
            .realization_list
            .clone()
            .unwrap_or_else(|| vec![200, 400, 800, 1600, 3200, 6400, 12800]);
        if realization_list.is_empty() || realization_list.iter().any(|&k| k < 2) {
            issues.push("mc.realization_list entries must be at least 2".into());
        }
        let seed = self.mc.seed.unwrap_or(20_260_810);
        let reference_nodes = self.mc.reference_nodes.unwrap_or(48);
        if reference_nodes < 8 {
            issues.push("mc.reference_nodes must be at least 8".into());
        }
        let reference_panels = self.mc.reference_panels.unwrap_or(2_000);
        if reference_panels < 100 {
            issues.push("mc.reference_panels must be at least 100".into());
        }

        // evaluation grids: tables use (z in [0,5], t = 1) profiles except
        // the domain-RMSE experiment, which adds the t range
        let z = self.eval.z.unwrap_or(5.0);
        let t = self.eval.t.unwrap_or(1.0);
        if !(t > 0.0) {
            issues.push(format!("eval.t must be positive, got {t}"));
        }
        if z < 0.0 {
            issues.push(format!("eval.z must be nonnegative, got {z}"));
        }
        let (z_start, z_stop) = (
            self.eval.z_start.unwrap_or(0.0),
            self.eval.z_stop.unwrap_or(5.0),
        );
        let z_step_default = if experiment == "table4" || experiment == "figures" {
            0.05
        } else {
            0.1
        };
        let z_step = self.eval.z_step.unwrap_or(z_step_default);
        if !(z_step > 0.0) || z_stop <= z_start {
            issues.push("eval z range must be well-ordered with positive step".into());
        }
        let (t_start, t_stop) = (
            self.eval.t_start.unwrap_or(0.0),
            self.eval.t_stop.unwrap_or(1.0),
        );
        let t_step = self.eval.t_step.unwrap_or(0.01);
        if !(t_step > 0.0) || t_stop <= t_start {
            issues.push("eval t range must be well-ordered with positive step".into());
        }

        let out_dir = self
            .output
            .dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("out"));

        if !issues.is_empty() {
            return Err(ConfigError(issues));
        }
        Ok(Resolved {
            a,
            nu,
            a_dist: a_dist.expect("validated"),
            nu_dist: nu_dist.expect("validated"),
            radius,
            step,
            radius_list,
            step_list,
            degree_list,
            realizations,
            realization_list,
            seed,
            reference_nodes,
            reference_panels,
            z,
            t,
            z_grid: range_grid(z_start, z_stop, z_step),
            t_grid: range_grid(t_start, t_stop, t_step),
            out_dir,
            timestamp: true,
        })
    }
}

pub const EXPERIMENTS: &[&str] = &[
    "table1", "table2", "table3", "table4", "table5", "table6", "table7", "table8", "figures",
    "custom",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let cfg = FileConfig::default().resolve("table2").unwrap();
        assert_eq!(cfg.radius_list.len(), 6);
        assert_eq!(cfg.z_grid.len(), 51);
        assert_eq!(cfg.t_grid.len(), 101);
        assert_eq!(cfg.seed, 20_260_810);
    }

    #[test]
    fn table4_uses_fine_z_grid() {
        let cfg = FileConfig::default().resolve("table4").unwrap();
        assert_eq!(cfg.z_grid.len(), 101);
        assert!((cfg.z_grid[1] - 0.05).abs() < 1e-12);
    }

    #[test]
    fn bad_fields_are_all_reported() {
        let file: FileConfig = toml::from_str(
            r#"
            [problem]
            a = -1.0
            [grid]
            step = -0.5
            [mc]
            realizations = 1
        "#,
        )
        .unwrap();
        let err = file.resolve("custom").unwrap_err();
        assert_eq!(err.0.len(), 3, "{err}");
    }

    #[test]
    fn unknown_keys_rejected() {
        let r: Result<FileConfig, _> = toml::from_str("[grid]\nradius_typo = 3.0\n");
        assert!(r.is_err());
    }

    #[test]
    fn dist_specs_parse() {
        let file: FileConfig = toml::from_str(
            r#"
            [random.a]
            kind = "point"
            value = 1.0
            [random.nu]
            kind = "gamma"
            shape = 4.0
            scale = 0.5
            lo = 0.5
            hi = 1.5
        "#,
        )
        .unwrap();
        let cfg = file.resolve("custom").unwrap();
        assert!(cfg.a_dist.is_point_mass());
        assert_eq!(cfg.nu_dist.lo, 0.5);
    }
}
