//! Problem construction: one instance of the coupled system, the spectral
//! condition on the diffusion matrix, and the rotating-diffusion preset.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, symmetric_part, Matrix2, Vector2};

/// Vector-valued function of one real variable, shareable across threads.
pub type VecFn = Arc<dyn Fn(f64) -> Vector2 + Send + Sync>;

/// Initial and boundary data for one problem instance.
///
/// `f` is the initial condition (absolutely integrable on the half-line),
/// `g` the Neumann flux at z = 0. When the cosine transform of `f` is known
/// in closed form it can be supplied as `transform_f`, and a constant `g`
/// can be flagged so the kernel takes the exact time-integral fast path.
#[derive(Clone)]
pub struct BoundaryData {
    pub f: VecFn,
    pub g: VecFn,
    pub transform_f: Option<VecFn>,
    pub g_constant: Option<Vector2>,
}

impl BoundaryData {
    pub fn new(f: VecFn, g: VecFn) -> Self {
        Self {
            f,
            g,
            transform_f: None,
            g_constant: None,
        }
    }

    /// Data with f = 0 and g constant in time.
    pub fn zero_initial_constant_flux(g0: Vector2) -> Self {
        Self {
            f: Arc::new(|_| Vector2::zero()),
            g: Arc::new(move |_| g0),
            transform_f: Some(Arc::new(|_| Vector2::zero())),
            g_constant: Some(g0),
        }
    }

    pub fn with_transform(mut self, transform_f: VecFn) -> Self {
        self.transform_f = Some(transform_f);
        self
    }

    pub fn with_constant_flux(mut self, g0: Vector2) -> Self {
        self.g = Arc::new(move |_| g0);
        self.g_constant = Some(g0);
        self
    }
}

/// One realization of the coupled parabolic system
/// `du/dt = A u + B u_zz` on z > 0.
///
/// Construction validates the spectral condition
/// `b = lambda_min((B + B^T)/2) > 0`, which guarantees Gaussian-type decay
/// of the transformed kernel in frequency; `b` is cached for the
/// truncation bounds.
#[derive(Clone)]
pub struct CoupledProblem {
    /// Reaction coupling matrix (`A` in the system).
    pub reaction: Matrix2,
    /// Diffusion coupling matrix (`B` in the system).
    pub diffusion: Matrix2,
    pub data: BoundaryData,
    spectral_gap: f64,
}

impl CoupledProblem {
    /// Builds a problem, failing with [`Error::SpectralConditionViolated`]
    /// when the diffusion matrix has no positive-definite symmetric part.
    pub fn new(reaction: Matrix2, diffusion: Matrix2, data: BoundaryData) -> Result<Self> {
        let spectrum = symmetric_eigenvalues(&symmetric_part(&diffusion))
            .expect("symmetric part is symmetric");
        let b = spectrum.lambda_min;
        if b <= 0.0 {
            return Err(Error::SpectralConditionViolated(b));
        }
        Ok(Self {
            reaction,
            diffusion,
            data,
            spectral_gap: b,
        })
    }

    /// Cached `lambda_min((B + B^T)/2)`, strictly positive.
    pub fn spectral_gap(&self) -> f64 {
        self.spectral_gap
    }

    /// Rotating-diffusion instance (wind-driven ocean current model):
    /// reaction `[[0, a], [-a, 0]]`, diffusion `nu I`, zero initial data and
    /// constant unit flux `du/dz(0, t) = [-1, 0]`.
    pub fn ekman(a: f64, nu: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
            });
        }
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "nu",
                value: nu,
            });
        }
        let reaction = Matrix2::new(0.0, a, -a, 0.0);
        let diffusion = Matrix2::scaled_identity(nu);
        let data = BoundaryData::zero_initial_constant_flux(Vector2::new(-1.0, 0.0));
        Self::new(reaction, diffusion, data)
    }
}

/// Cosine Fourier transform of the initial condition at frequency `omega`:
/// the closed form when the data carries one, otherwise a midpoint-rule
/// approximation of the integral over `[0, z_cap]`.
pub fn cosine_transform_f(data: &BoundaryData, omega: f64, z_cap: f64, nodes: usize) -> Vector2 {
    assert!(omega >= 0.0 && z_cap > 0.0 && nodes >= 1);
    if let Some(tf) = &data.transform_f {
        return tf(omega);
    }
    let h = z_cap / nodes as f64;
    let mut acc = Vector2::zero();
    for j in 0..nodes {
        let z = (j as f64 + 0.5) * h;
        acc = acc + (data.f)(z) * (omega * z).cos();
    }
    acc * h
}
