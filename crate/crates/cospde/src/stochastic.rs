//! Random layer: truncated-distribution sampling through inverse CDFs,
//! hypothesis checks (moment and spectral conditions), Monte Carlo moment
//! estimation of the midpoint-inverted solution, and a deterministic
//! quadrature reference for those moments.
//!
//! Randomness enters only through the two coefficient laws; every
//! realization gets its own counter-derived substream keyed by
//! `(seed, realization)`, so results are reproducible bit-for-bit for any
//! worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::kernel_value;
use crate::linalg::Vector2;
use crate::oracle::{exact_solution, OracleConfig};
use crate::problem::CoupledProblem;
use crate::quadrature::{gauss_legendre, QuadratureGrid};
use crate::special::{gamma_quantile, ln_gamma, norm_cdf, norm_quantile, reg_lower_gamma};

/// splitmix64 step: the standard 64-bit finalizer-based generator.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent substream for one realization, derived from the master seed
/// and the realization index. Splittable-counter contract: the stream is a
/// pure function of `(seed, realization)`.
pub struct Substream {
    state: u64,
}

impl Substream {
    pub fn new(seed: u64, realization: u64) -> Self {
        let mut s = seed;
        let a = splitmix64(&mut s);
        let mut state = a ^ realization.wrapping_mul(0xD1B5_4A32_D192_ED03);
        // one warm-up step decorrelates neighboring realization indices
        splitmix64(&mut state);
        Self { state }
    }

    /// Uniform draw in `[0, 1)` from the top 53 bits.
    pub fn next_u01(&mut self) -> f64 {
        (splitmix64(&mut self.state) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Parent law of a truncated distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionKind {
    Normal { mean: f64, std_dev: f64 },
    Gamma { shape: f64, rate: f64 },
}

/// Distribution truncated to `[lo, hi]`, sampled by inverse CDF on the
/// restricted range. `lo == hi` is admitted as a point mass (the sampler
/// returns `lo` and moment quadratures collapse to a single node), which
/// the degenerate-coefficient identities rely on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedDistribution {
    pub kind: DistributionKind,
    pub lo: f64,
    pub hi: f64,
    normalizer: f64,
    cdf_lo: f64,
}

impl TruncatedDistribution {
    /// Normal(mean, std_dev) truncated to `[lo, hi]`.
    pub fn normal(mean: f64, std_dev: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(std_dev > 0.0) {
            return Err(Error::InvalidParameter {
                name: "std_dev",
                value: std_dev,
            });
        }
        Self::build(DistributionKind::Normal { mean, std_dev }, lo, hi)
    }

    /// Gamma with shape-rate parameterization truncated to `[lo, hi]`.
    pub fn gamma(shape: f64, rate: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(shape > 0.0) {
            return Err(Error::InvalidParameter {
                name: "shape",
                value: shape,
            });
        }
        if !(rate > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rate",
                value: rate,
            });
        }
        if lo < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lo",
                value: lo,
            });
        }
        Self::build(DistributionKind::Gamma { shape, rate }, lo, hi)
    }

    /// Gamma with shape-scale parameterization (scale = 1/rate).
    pub fn gamma_shape_scale(shape: f64, scale: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: scale,
            });
        }
        Self::gamma(shape, 1.0 / scale, lo, hi)
    }

    /// Point mass at `x`.
    pub fn point_mass(x: f64) -> Self {
        Self {
            kind: DistributionKind::Normal {
                mean: x,
                std_dev: 1.0,
            },
            lo: x,
            hi: x,
            normalizer: 1.0,
            cdf_lo: 0.0,
        }
    }

    fn build(kind: DistributionKind, lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "support",
                value: hi - lo,
            });
        }
        if lo == hi {
            return Ok(Self {
                kind,
                lo,
                hi,
                normalizer: 1.0,
                cdf_lo: 0.0,
            });
        }
        let cdf_lo = cdf_untruncated(kind, lo);
        let normalizer = cdf_untruncated(kind, hi) - cdf_lo;
        if !(normalizer > 0.0) {
            return Err(Error::InvalidParameter {
                name: "normalizer",
                value: normalizer,
            });
        }
        Ok(Self {
            kind,
            lo,
            hi,
            normalizer,
            cdf_lo,
        })
    }

    pub fn is_point_mass(&self) -> bool {
        self.lo == self.hi
    }

    /// Untruncated mass on the support interval.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// Inverse-CDF sample from the truncated law: maps `u01` in `[0, 1)`
    /// through the parent quantile on `[CDF(lo), CDF(hi)]` and clamps to
    /// the support.
    pub fn sample(&self, u01: f64) -> f64 {
        assert!((0.0..1.0).contains(&u01), "u01 must lie in [0,1)");
        if self.is_point_mass() {
            return self.lo;
        }
        let p = self.cdf_lo + u01 * self.normalizer;
        let x = match self.kind {
            DistributionKind::Normal { mean, std_dev } => mean + std_dev * norm_quantile(p),
            DistributionKind::Gamma { shape, rate } => gamma_quantile(shape, p) / rate,
        };
        x.clamp(self.lo, self.hi)
    }

    /// Density of the truncated law at `x` (zero outside the support).
    /// Undefined for point masses, which quadratures must special-case.
    pub fn pdf(&self, x: f64) -> f64 {
        assert!(!self.is_point_mass(), "point mass has no density");
        if x < self.lo || x > self.hi {
            return 0.0;
        }
        pdf_untruncated(self.kind, x) / self.normalizer
    }
}

fn cdf_untruncated(kind: DistributionKind, x: f64) -> f64 {
    match kind {
        DistributionKind::Normal { mean, std_dev } => norm_cdf((x - mean) / std_dev),
        DistributionKind::Gamma { shape, rate } => {
            if x <= 0.0 {
                0.0
            } else {
                reg_lower_gamma(shape, rate * x)
            }
        }
    }
}

fn pdf_untruncated(kind: DistributionKind, x: f64) -> f64 {
    match kind {
        DistributionKind::Normal { mean, std_dev } => {
            let zscore = (x - mean) / std_dev;
            (-0.5 * zscore * zscore).exp() / (std_dev * (2.0 * std::f64::consts::PI).sqrt())
        }
        DistributionKind::Gamma { shape, rate } => {
            if x <= 0.0 {
                0.0
            } else {
                (shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(shape)).exp()
            }
        }
    }
}

/// Certificate that a bounded law satisfies the moment growth condition
/// `E|x|^r <= m h^r` for all r.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub certified: bool,
    /// Constant factor of the certificate (1 for bounded supports).
    pub m: f64,
    /// Growth base: `max(|lo|, |hi|)`.
    pub h: f64,
    pub warning: Option<String>,
}

/// Moment condition check. Bounded (truncated) supports always certify with
/// `m = 1`, `h = max(|lo|, |hi|)`; the warning channel exists for any
/// future unbounded extension.
pub fn check_moment_condition(dist: &TruncatedDistribution) -> MomentReport {
    let h = dist.lo.abs().max(dist.hi.abs());
    MomentReport {
        certified: true,
        m: 1.0,
        h,
        warning: None,
    }
}

/// Coefficient laws for the random rotating-diffusion family
/// `A(xi) = [[0, a(xi)], [-a(xi), 0]]`, `B(xi) = nu(xi) I`, with the two
/// variables independent.
#[derive(Debug, Clone, Copy)]
pub struct RandomCoefficients {
    pub a_dist: TruncatedDistribution,
    pub nu_dist: TruncatedDistribution,
}

impl RandomCoefficients {
    pub fn new(a_dist: TruncatedDistribution, nu_dist: TruncatedDistribution) -> Self {
        Self { a_dist, nu_dist }
    }

    /// Random spectral condition: since `B(xi) = nu(xi) I`, the infimum of
    /// the symmetric-part eigenvalue over realizations is the lower support
    /// bound of `nu`. Must be strictly positive.
    pub fn check_spectral_condition(&self) -> Result<f64> {
        let b_star = self.nu_dist.lo;
        if b_star <= 0.0 {
            return Err(Error::SpectralConditionViolated(b_star));
        }
        Ok(b_star)
    }

    /// Draws one `(a, nu)` realization from substream `(seed, k)`.
    pub fn draw(&self, seed: u64, realization: u64) -> (f64, f64) {
        let mut stream = Substream::new(seed, realization);
        let a = self.a_dist.sample(stream.next_u01());
        let nu = self.nu_dist.sample(stream.next_u01());
        (a, nu)
    }
}

/// Monte Carlo run settings.
#[derive(Debug, Clone)]
pub struct MonteCarloConfig {
    /// Realization count, at least 2 so the sample variance is defined.
    pub realizations: usize,
    pub seed: u64,
    pub grid: QuadratureGrid,
    pub z_grid: Vec<f64>,
    pub t: f64,
}

/// Pointwise expectation and standard deviation over a z-profile.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentField {
    pub z_grid: Vec<f64>,
    pub mean: Vec<Vector2>,
    pub std: Vec<Vector2>,
    pub k_used: usize,
    pub seed_used: u64,
}

impl MomentField {
    /// Componentwise root-mean-square difference of the mean profiles.
    pub fn rmse_mean(&self, other: &MomentField) -> Result<Vector2> {
        rmse_profiles(&self.z_grid, &self.mean, &other.z_grid, &other.mean)
    }

    /// Componentwise root-mean-square difference of the std profiles.
    pub fn rmse_std(&self, other: &MomentField) -> Result<Vector2> {
        rmse_profiles(&self.z_grid, &self.std, &other.z_grid, &other.std)
    }
}

fn rmse_profiles(za: &[f64], a: &[Vector2], zb: &[f64], b: &[Vector2]) -> Result<Vector2> {
    if za.len() != zb.len() || za.iter().zip(zb).any(|(x, y)| x != y) {
        return Err(Error::GridMismatch(format!(
            "profiles on different z grids ({} vs {} points)",
            za.len(),
            zb.len()
        )));
    }
    let n = a.len() as f64;
    let mut acc1 = 0.0;
    let mut acc2 = 0.0;
    for (x, y) in a.iter().zip(b) {
        acc1 += (x.v1 - y.v1) * (x.v1 - y.v1);
        acc2 += (x.v2 - y.v2) * (x.v2 - y.v2);
    }
    Ok(Vector2::new((acc1 / n).sqrt(), (acc2 / n).sqrt()))
}

/// One realization's solution profile: builds the rotating-diffusion
/// instance for the drawn `(a, nu)`, runs one kernel sweep over the grid
/// (the kernel is z-independent), and assembles the midpoint sum per z.
fn realization_profile(
    a: f64,
    nu: f64,
    grid: &QuadratureGrid,
    z_grid: &[f64],
    t: f64,
) -> Vec<Vector2> {
    let problem = CoupledProblem::ekman(a, nu).expect("draws stay inside the support");
    let sweep: Vec<Vector2> = grid
        .nodes()
        .map(|omega| kernel_value(&problem, omega, t, 1))
        .collect();
    z_grid
        .iter()
        .map(|&z| crate::quadrature::midpoint_inverse_with_sweep(grid, &sweep, z))
        .collect()
}

/// Monte Carlo expectation and standard deviation of the midpoint-inverted
/// solution profile.
///
/// Realizations are evaluated in parallel but merged by a sequential
/// one-pass (Welford) update in realization order, so the output is
/// bit-identical for a fixed `(seed, K)` whatever the worker count. The
/// standard deviation uses the population divisor K, matching the plug-in
/// `E[x^2] - E[x]^2` form of the variance expansion.
pub fn mc_moments(coeffs: &RandomCoefficients, cfg: &MonteCarloConfig) -> Result<MomentField> {
    if cfg.realizations < 2 {
        return Err(Error::InvalidParameter {
            name: "realizations",
            value: cfg.realizations as f64,
        });
    }
    coeffs.check_spectral_condition()?;
    let a_report = check_moment_condition(&coeffs.a_dist);
    let nu_report = check_moment_condition(&coeffs.nu_dist);
    debug_assert!(a_report.certified && nu_report.certified);

    let profiles: Vec<Vec<Vector2>> = (0..cfg.realizations as u64)
        .into_par_iter()
        .map(|k| {
            let (a, nu) = coeffs.draw(cfg.seed, k);
            realization_profile(a, nu, &cfg.grid, &cfg.z_grid, cfg.t)
        })
        .collect();

    let nz = cfg.z_grid.len();
    let mut mean = vec![Vector2::zero(); nz];
    let mut m2 = vec![Vector2::zero(); nz];
    let mut count = 0.0_f64;
    for profile in &profiles {
        count += 1.0;
        for (i, x) in profile.iter().enumerate() {
            let d1 = *x - mean[i];
            mean[i] = mean[i] + d1 * (1.0 / count);
            let d2 = *x - mean[i];
            m2[i] = Vector2::new(m2[i].v1 + d1.v1 * d2.v1, m2[i].v2 + d1.v2 * d2.v2);
        }
    }
    let std = m2
        .iter()
        .map(|s| {
            Vector2::new(
                (s.v1 / count).max(0.0).sqrt(),
                (s.v2 / count).max(0.0).sqrt(),
            )
        })
        .collect();

    Ok(MomentField {
        z_grid: cfg.z_grid.clone(),
        mean,
        std,
        k_used: cfg.realizations,
        seed_used: cfg.seed,
    })
}

/// Deterministic reference moments of the exact solution: tensor-product
/// Gauss-Legendre over the `(a, nu)` support rectangle, weighting by the
/// product of truncated densities. Point-mass coefficients collapse their
/// axis to a single unit-weight node. Variances computed as
/// `E[x^2] - E[x]^2` with negative round-off clamped at zero.
pub fn reference_moments(
    coeffs: &RandomCoefficients,
    z_grid: &[f64],
    t: f64,
    nodes_per_dim: usize,
    cfg: &OracleConfig,
) -> MomentField {
    assert!(
        nodes_per_dim >= 8,
        "need at least 8 quadrature nodes per axis"
    );

    let axis = |dist: &TruncatedDistribution| -> (Vec<f64>, Vec<f64>) {
        if dist.is_point_mass() {
            return (vec![dist.lo], vec![1.0]);
        }
        let (x, w) = gauss_legendre(nodes_per_dim);
        let half = 0.5 * (dist.hi - dist.lo);
        let mid = 0.5 * (dist.hi + dist.lo);
        let nodes: Vec<f64> = x.iter().map(|&xi| mid + half * xi).collect();
        let weights: Vec<f64> = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * half * dist.pdf(mid + half * xi))
            .collect();
        (nodes, weights)
    };

    let (a_nodes, a_weights) = axis(&coeffs.a_dist);
    let (nu_nodes, nu_weights) = axis(&coeffs.nu_dist);

    let cells: Vec<(f64, f64, f64)> = a_nodes
        .iter()
        .zip(&a_weights)
        .flat_map(|(&a, &wa)| {
            nu_nodes
                .iter()
                .zip(&nu_weights)
                .map(move |(&nu, &wnu)| (a, nu, wa * wnu))
        })
        .collect();

    let nz = z_grid.len();
    let partials: Vec<(Vec<Vector2>, Vec<Vector2>)> = cells
        .par_iter()
        .map(|&(a, nu, w)| {
            let profile: Vec<Vector2> = z_grid
                .iter()
                .map(|&z| exact_solution(a, nu, |_| 1.0, z, t, cfg) * w)
                .collect();
            let squares: Vec<Vector2> = z_grid
                .iter()
                .zip(&profile)
                .map(|(_, v)| {
                    // v = w * u; second moment needs w * u^2 = v^2 / w
                    if w == 0.0 {
                        Vector2::zero()
                    } else {
                        Vector2::new(v.v1 * v.v1 / w, v.v2 * v.v2 / w)
                    }
                })
                .collect();
            (profile, squares)
        })
        .collect();

    let mut mean = vec![Vector2::zero(); nz];
    let mut second = vec![Vector2::zero(); nz];
    for (profile, squares) in &partials {
        for i in 0..nz {
            mean[i] = mean[i] + profile[i];
            second[i] = second[i] + squares[i];
        }
    }
    let std = mean
        .iter()
        .zip(&second)
        .map(|(m, s)| {
            Vector2::new(
                (s.v1 - m.v1 * m.v1).max(0.0).sqrt(),
                (s.v2 - m.v2 * m.v2).max(0.0).sqrt(),
            )
        })
        .collect();

    MomentField {
        z_grid: z_grid.to_vec(),
        mean,
        std,
        k_used: 0,
        seed_used: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn benchmark_coeffs() -> RandomCoefficients {
        RandomCoefficients::new(
            TruncatedDistribution::normal(2.0, 0.1, 0.8, 1.2).unwrap(),
            TruncatedDistribution::gamma(4.0, 2.0, 0.5, 1.5).unwrap(),
        )
    }

    #[test]
    fn sample_hits_quantile_endpoints() {
        let d = TruncatedDistribution::normal(0.0, 1.0, -1.0, 1.0).unwrap();
        approx(d.sample(0.0), -1.0, 1e-12);
        approx(d.sample(1.0 - 1e-16), 1.0, 1e-9);
        let g = TruncatedDistribution::gamma(4.0, 2.0, 0.5, 1.5).unwrap();
        approx(g.sample(0.0), 0.5, 1e-10);
        approx(g.sample(1.0 - 1e-16), 1.5, 1e-8);
    }

    #[test]
    fn symmetric_truncation_is_antisymmetric() {
        let d = TruncatedDistribution::normal(0.0, 1.0, -1.0, 1.0).unwrap();
        for u in [0.1, 0.25, 0.4, 0.49] {
            approx(d.sample(u) + d.sample(1.0 - u), 0.0, 1e-9);
        }
    }

    #[test]
    fn steep_normal_window_mean_matches_quadrature() {
        // N(2, 0.1) truncated to [0.8, 1.2]: the window sits 8 sigma below
        // the mean, so the truncated density is a rising exponential with
        // nearly all mass at the right edge.
        let d = TruncatedDistribution::normal(2.0, 0.1, 0.8, 1.2).unwrap();
        approx(d.normalizer(), 6.220_960_574_271_784e-16, 1e-29);

        // quadrature oracle for the truncated mean
        let (x, w) = gauss_legendre(256);
        let (mut mass, mut mean) = (0.0, 0.0);
        for (&xi, &wi) in x.iter().zip(&w) {
            let node = 1.0 + 0.2 * xi; // map to [0.8, 1.2]
            let weight = wi * 0.2 * d.pdf(node);
            mass += weight;
            mean += weight * node;
        }
        approx(mass, 1.0, 1e-12);
        let mean = mean / mass;
        approx(mean, 1.187_863_188_776_388_7, 1e-12);

        // empirical mean of 1e6 inverse-CDF samples within 3 standard errors
        let mut stream = Substream::new(9_001, 0);
        let n = 1_000_000;
        let (mut acc, mut acc2) = (0.0, 0.0);
        for _ in 0..n {
            let s = d.sample(stream.next_u01());
            assert!((0.8..=1.2).contains(&s));
            acc += s;
            acc2 += s * s;
        }
        let emp_mean = acc / n as f64;
        let emp_var = acc2 / n as f64 - emp_mean * emp_mean;
        let stderr = (emp_var / n as f64).sqrt();
        assert!(
            (emp_mean - mean).abs() <= 3.0 * stderr,
            "empirical {emp_mean} vs truncated mean {mean} (3se = {})",
            3.0 * stderr
        );
    }

    #[test]
    fn truncated_gamma_mean_matches_quadrature() {
        let d = TruncatedDistribution::gamma(4.0, 2.0, 0.5, 1.5).unwrap();
        approx(d.normalizer(), 0.333_779_954_341_614_93, 1e-13);
        let (x, w) = gauss_legendre(256);
        let mut mean = 0.0;
        for (&xi, &wi) in x.iter().zip(&w) {
            let node = 1.0 + 0.5 * xi;
            mean += wi * 0.5 * d.pdf(node) * node;
        }
        approx(mean, 1.085_007_690_207_524, 1e-12);
    }

    #[test]
    fn moment_condition_bounded_supports() {
        let r = check_moment_condition(&TruncatedDistribution::normal(2.0, 0.1, 0.8, 1.2).unwrap());
        assert!(r.certified);
        assert_eq!((r.m, r.h), (1.0, 1.2));
        let r = check_moment_condition(&TruncatedDistribution::gamma(4.0, 2.0, 0.5, 1.5).unwrap());
        assert_eq!(r.h, 1.5);
        let r =
            check_moment_condition(&TruncatedDistribution::normal(0.0, 1.0, -2.0, 1.0).unwrap());
        assert_eq!(r.h, 2.0);
    }

    #[test]
    fn spectral_condition_from_nu_support() {
        assert_eq!(benchmark_coeffs().check_spectral_condition().unwrap(), 0.5);
        let good = RandomCoefficients::new(
            TruncatedDistribution::normal(1.0, 0.1, 0.9, 1.1).unwrap(),
            TruncatedDistribution::gamma(4.0, 2.0, 2.0, 3.0).unwrap(),
        );
        assert_eq!(good.check_spectral_condition().unwrap(), 2.0);
        let bad = RandomCoefficients::new(
            TruncatedDistribution::normal(1.0, 0.1, 0.9, 1.1).unwrap(),
            TruncatedDistribution::gamma(4.0, 2.0, 0.0, 1.0).unwrap(),
        );
        assert!(matches!(
            bad.check_spectral_condition(),
            Err(Error::SpectralConditionViolated(_))
        ));
    }

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let mut s1 = Substream::new(42, 7);
        let mut s2 = Substream::new(42, 7);
        let mut s3 = Substream::new(42, 8);
        let (a1, b1) = (s1.next_u01(), s1.next_u01());
        assert_eq!((a1, b1), (s2.next_u01(), s2.next_u01()));
        assert_ne!(a1, s3.next_u01());
    }

    #[test]
    fn degenerate_mc_equals_deterministic_solve() {
        let coeffs = RandomCoefficients::new(
            TruncatedDistribution::point_mass(1.0),
            TruncatedDistribution::point_mass(1.0),
        );
        let grid = QuadratureGrid::new(10.0, 200).unwrap();
        let z_grid: Vec<f64> = (0..11).map(|i| i as f64 * 0.5).collect();
        let cfg = MonteCarloConfig {
            realizations: 4,
            seed: 3,
            grid,
            z_grid: z_grid.clone(),
            t: 1.0,
        };
        let field = mc_moments(&coeffs, &cfg).unwrap();
        let p = CoupledProblem::ekman(1.0, 1.0).unwrap();
        for (i, &z) in z_grid.iter().enumerate() {
            let det = crate::quadrature::midpoint_inverse(&p, &cfg.grid, z, 1.0);
            approx(field.mean[i].v1, det.v1, 1e-12);
            approx(field.mean[i].v2, det.v2, 1e-12);
            approx(field.std[i].v1, 0.0, 1e-12);
            approx(field.std[i].v2, 0.0, 1e-12);
        }
    }

    #[test]
    fn mc_is_bit_identical_across_worker_counts() {
        let coeffs = benchmark_coeffs();
        let grid = QuadratureGrid::new(5.0, 100).unwrap();
        let cfg = MonteCarloConfig {
            realizations: 64,
            seed: 11,
            grid,
            z_grid: vec![0.0, 1.0, 2.0, 5.0],
            t: 1.0,
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| mc_moments(&coeffs, &cfg).unwrap());
        let multi = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| mc_moments(&coeffs, &cfg).unwrap());
        assert_eq!(single, multi);
    }

    #[test]
    fn sample_containment_under_mc_draws() {
        let coeffs = benchmark_coeffs();
        for k in 0..2_000 {
            let (a, nu) = coeffs.draw(20_260_810, k);
            assert!((0.8..=1.2).contains(&a), "a = {a}");
            assert!((0.5..=1.5).contains(&nu), "nu = {nu}");
        }
    }

    #[test]
    fn reference_moments_degenerate_equals_exact() {
        let coeffs = RandomCoefficients::new(
            TruncatedDistribution::point_mass(1.0),
            TruncatedDistribution::point_mass(1.0),
        );
        let z_grid = [0.0, 2.5, 5.0];
        let cfg = OracleConfig::with_panels(2_000);
        let field = reference_moments(&coeffs, &z_grid, 1.0, 16, &cfg);
        for (i, &z) in z_grid.iter().enumerate() {
            let want = exact_solution(1.0, 1.0, |_| 1.0, z, 1.0, &cfg);
            approx(field.mean[i].v1, want.v1, 1e-14);
            approx(field.mean[i].v2, want.v2, 1e-14);
            assert_eq!(field.std[i], Vector2::zero());
        }
    }

    #[test]
    fn reference_moments_quadrature_self_convergence() {
        let coeffs = benchmark_coeffs();
        let z_grid = [0.0, 1.0, 3.0, 5.0];
        let cfg = OracleConfig::with_panels(2_000);
        let coarse = reference_moments(&coeffs, &z_grid, 1.0, 32, &cfg);
        let fine = reference_moments(&coeffs, &z_grid, 1.0, 64, &cfg);
        for i in 0..z_grid.len() {
            assert!((coarse.mean[i] - fine.mean[i]).norm_inf() < 1e-7);
            assert!((coarse.std[i] - fine.std[i]).norm_inf() < 1e-7);
        }
    }

    #[test]
    fn reference_mean_profile_decays_past_extremum() {
        let coeffs = benchmark_coeffs();
        let z_grid: Vec<f64> = (0..51).map(|i| i as f64 * 0.1).collect();
        let field = reference_moments(&coeffs, &z_grid, 1.0, 24, &OracleConfig::with_panels(1_000));
        let mags: Vec<f64> = field.mean.iter().map(|v| v.v1.abs()).collect();
        let peak = mags
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        for w in mags[peak..].windows(2) {
            assert!(
                w[1] <= w[0] * (1.0 + 1e-9),
                "|E[u1]| not decaying past peak"
            );
        }
    }

    #[test]
    fn rmse_helpers() {
        let f1 = MomentField {
            z_grid: vec![0.0, 1.0],
            mean: vec![Vector2::new(1.0, 2.0), Vector2::new(3.0, 4.0)],
            std: vec![Vector2::zero(), Vector2::zero()],
            k_used: 1,
            seed_used: 0,
        };
        let mut f2 = f1.clone();
        assert_eq!(f1.rmse_mean(&f2).unwrap(), Vector2::zero());
        for v in &mut f2.mean {
            *v = *v + Vector2::new(0.5, -0.5);
        }
        let r = f1.rmse_mean(&f2).unwrap();
        approx(r.v1, 0.5, 1e-15);
        approx(r.v2, 0.5, 1e-15);
        let f3 = MomentField {
            z_grid: vec![0.0, 2.0],
            ..f1.clone()
        };
        assert!(f1.rmse_mean(&f3).is_err());
    }
}
