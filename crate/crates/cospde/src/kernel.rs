//! Frequency-domain kernel: the cosine-transformed solution
//! `V(t)(omega) = e^{Lt}(F(omega) - int_0^t e^{-Ls} B g(s) ds)` with
//! `L = A - omega^2 B`.
//!
//! For constant flux the time integral collapses to the closed form
//! `L^{-1}(e^{Lt} - I) B g`, combining the inner and outer exponentials so
//! every term decays for large frequency; the general path folds the outer
//! exponential into the integrand, `int_0^t e^{L(t-s)} B g(s) ds`, for the
//! same reason.

use rayon::prelude::*;

use crate::linalg::{mat_exp, mat_inverse, Matrix2, Vector2};
use crate::problem::CoupledProblem;
use crate::quadrature::QuadratureGrid;

/// Default panel count for the time quadrature when the flux is not
/// constant and no explicit count is given.
pub const DEFAULT_S_NODES: usize = 256;

/// One kernel sample tagged with its evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub omega: f64,
    pub t: f64,
    pub value: Vector2,
}

/// [`kernel_value`] bundled with its evaluation point.
pub fn kernel_eval(p: &CoupledProblem, omega: f64, t: f64, s_nodes: usize) -> KernelEval {
    KernelEval {
        omega,
        t,
        value: kernel_value(p, omega, t, s_nodes),
    }
}

fn transform_matrix(p: &CoupledProblem, omega: f64) -> Matrix2 {
    p.reaction - p.diffusion * (omega * omega)
}

/// Kernel value `V(t)(omega)`.
///
/// Constant flux uses the exact time integral when `L` is invertible and
/// silently falls back to composite midpoint in `s` (with `s_nodes` panels)
/// otherwise; nonconstant flux always takes the quadrature path.
pub fn kernel_value(p: &CoupledProblem, omega: f64, t: f64, s_nodes: usize) -> Vector2 {
    assert!(omega >= 0.0 && t > 0.0 && s_nodes >= 1);
    let l = transform_matrix(p, omega);
    let e_lt = mat_exp(&(l * t));
    let f_omega = match &p.data.transform_f {
        Some(tf) => tf(omega),
        None => crate::problem::cosine_transform_f(&p.data, omega, 50.0, 2000),
    };
    let homogeneous = e_lt.mul_vec(f_omega);

    let forced = if let Some(g0) = p.data.g_constant {
        let c = p.diffusion.mul_vec(g0);
        match mat_inverse(&l) {
            Ok(l_inv) => (l_inv * (e_lt - Matrix2::identity())).mul_vec(c),
            Err(_) => forced_by_quadrature(p, &l, t, s_nodes),
        }
    } else {
        forced_by_quadrature(p, &l, t, s_nodes)
    };

    homogeneous - forced
}

/// `int_0^t e^{L(t-s)} B g(s) ds` by composite midpoint in `s`.
fn forced_by_quadrature(p: &CoupledProblem, l: &Matrix2, t: f64, s_nodes: usize) -> Vector2 {
    let h = t / s_nodes as f64;
    let mut acc = Vector2::zero();
    for i in 0..s_nodes {
        let s = (i as f64 + 0.5) * h;
        let c = p.diffusion.mul_vec((p.data.g)(s));
        acc = acc + mat_exp(&(*l * (t - s))).mul_vec(c);
    }
    acc * h
}

/// Closed form of the forced response for the rotating-diffusion model with
/// unit scalar flux (g = 1):
///
/// ```text
/// I2(t, w) = nu/(a^2 + nu^2 w^4) *
///   [ w^2 nu + e^{-w^2 nu t}(a sin at - w^2 nu cos at),
///     -a     + e^{-w^2 nu t}(a cos at + w^2 nu sin at) ]
/// ```
///
/// Equals [`kernel_value`] on the [`CoupledProblem::ekman`] preset, whose
/// stored boundary vector `[-1, 0]` absorbs the sign.
pub fn kernel_closed_form_ekman(a: f64, nu: f64, omega: f64, t: f64) -> Vector2 {
    assert!(a > 0.0 && nu > 0.0 && omega >= 0.0 && t > 0.0);
    let p = omega * omega * nu;
    let den = a * a + nu * nu * omega.powi(4);
    let decay = (-p * t).exp();
    let (sin_at, cos_at) = (a * t).sin_cos();
    Vector2::new(
        nu * (p + decay * (a * sin_at - p * cos_at)) / den,
        nu * (-a + decay * (a * cos_at + p * sin_at)) / den,
    )
}

/// Kernel values over all grid nodes at a fixed time. Nodes are
/// independent, so evaluation is parallel; the collected order is the
/// ascending node order, keeping downstream sums deterministic.
pub fn kernel_sweep(
    p: &CoupledProblem,
    grid: &QuadratureGrid,
    t: f64,
    s_nodes: usize,
) -> Vec<Vector2> {
    grid.nodes()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&omega| kernel_value(p, omega, t, s_nodes))
        .collect()
}
