//! Dense 2x2 linear algebra: symmetric spectra, logarithmic norm, and a
//! closed-form matrix exponential exact for the rotation-plus-decay
//! structure that dominates the frequency-domain kernel.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Dense real 2x2 matrix. All entries are required to be finite; the
/// constructors assert this so NaN/Inf never enter an operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

/// Real 2-vector carrying solution components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector2 {
    pub v1: f64,
    pub v2: f64,
}

/// Eigenvalue pair of a symmetric 2x2 matrix, ordered `lambda_min <= lambda_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricSpectrum {
    pub lambda_min: f64,
    pub lambda_max: f64,
}

impl Matrix2 {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        assert!(
            a11.is_finite() && a12.is_finite() && a21.is_finite() && a22.is_finite(),
            "matrix entries must be finite"
        );
        Self { a11, a12, a21, a22 }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    /// Scalar multiple of the identity.
    pub fn scaled_identity(s: f64) -> Self {
        Self::new(s, 0.0, 0.0, s)
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    /// Max-row-sum norm.
    pub fn norm_inf(&self) -> f64 {
        (self.a11.abs() + self.a12.abs()).max(self.a21.abs() + self.a22.abs())
    }

    /// Sum of absolute entries. This is the matrix norm convention the
    /// truncation bounds inherit from the random-coefficient analysis.
    pub fn norm_entry_sum(&self) -> f64 {
        self.a11.abs() + self.a12.abs() + self.a21.abs() + self.a22.abs()
    }

    /// Largest singular value (2-norm), used by the growth-bound checks.
    pub fn norm_spectral(&self) -> f64 {
        let g = self.transpose() * *self;
        let s = symmetric_eigenvalues(&g).expect("Gram matrix is symmetric");
        s.lambda_max.max(0.0).sqrt()
    }

    pub fn mul_vec(&self, v: Vector2) -> Vector2 {
        Vector2::new(
            self.a11 * v.v1 + self.a12 * v.v2,
            self.a21 * v.v1 + self.a22 * v.v2,
        )
    }
}

impl Vector2 {
    pub fn new(v1: f64, v2: f64) -> Self {
        assert!(
            v1.is_finite() && v2.is_finite(),
            "vector components must be finite"
        );
        Self { v1, v2 }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.v1.hypot(self.v2)
    }

    pub fn norm_inf(&self) -> f64 {
        self.v1.abs().max(self.v2.abs())
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 + o.a11,
            self.a12 + o.a12,
            self.a21 + o.a21,
            self.a22 + o.a22,
        )
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 - o.a11,
            self.a12 - o.a12,
            self.a21 - o.a21,
            self.a22 - o.a22,
        )
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<f64> for Matrix2 {
    type Output = Matrix2;
    fn mul(self, s: f64) -> Matrix2 {
        Matrix2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }
}

impl Add for Vector2 {
    type Output = Vector2;
    fn add(self, o: Vector2) -> Vector2 {
        Vector2::new(self.v1 + o.v1, self.v2 + o.v2)
    }
}

impl Sub for Vector2 {
    type Output = Vector2;
    fn sub(self, o: Vector2) -> Vector2 {
        Vector2::new(self.v1 - o.v1, self.v2 - o.v2)
    }
}

impl Mul<f64> for Vector2 {
    type Output = Vector2;
    fn mul(self, s: f64) -> Vector2 {
        Vector2::new(self.v1 * s, self.v2 * s)
    }
}

impl Neg for Vector2 {
    type Output = Vector2;
    fn neg(self) -> Vector2 {
        Vector2::new(-self.v1, -self.v2)
    }
}

/// `(P + P^T)/2`. The result is symmetric by construction.
pub fn symmetric_part(p: &Matrix2) -> Matrix2 {
    let off = 0.5 * (p.a12 + p.a21);
    Matrix2::new(p.a11, off, off, p.a22)
}

/// Symmetry tolerance for [`symmetric_eigenvalues`]; inputs normally come
/// from [`symmetric_part`], so the check only guards misuse.
const SYMMETRY_TOL: f64 = 1e-12;

/// Closed-form eigenvalues of a symmetric 2x2 matrix:
/// `trace/2 +- sqrt((delta/2)^2 + a12^2)`.
pub fn symmetric_eigenvalues(s: &Matrix2) -> Result<SymmetricSpectrum> {
    let skew = (s.a12 - s.a21).abs();
    if skew > SYMMETRY_TOL {
        return Err(Error::NonSymmetric(skew));
    }
    let mid = 0.5 * (s.a11 + s.a22);
    let half_gap = 0.5 * (s.a11 - s.a22);
    let radius = half_gap.hypot(s.a12);
    Ok(SymmetricSpectrum {
        lambda_min: mid - radius,
        lambda_max: mid + radius,
    })
}

/// Logarithmic norm `mu(P)`: the largest eigenvalue of `(P + P^T)/2`.
/// Controls matrix-exponential growth through `||e^{Pt}|| <= e^{t mu(P)}`.
pub fn log_norm(p: &Matrix2) -> f64 {
    symmetric_eigenvalues(&symmetric_part(p))
        .expect("symmetric part is symmetric")
        .lambda_max
}

/// `sinh(sqrt(d))/sqrt(d)` extended evenly through d <= 0, where it equals
/// `sin(sqrt(-d))/sqrt(-d)`. `d` is the squared off-trace invariant.
fn sinhc_from_square(d: f64) -> f64 {
    // |delta| < 1e-4  <=>  |d| < 1e-8: even series, 4 terms.
    if d.abs() < 1e-8 {
        1.0 + d / 6.0 + d * d / 120.0 + d * d * d / 5040.0
    } else if d > 0.0 {
        let delta = d.sqrt();
        delta.sinh() / delta
    } else {
        let theta = (-d).sqrt();
        theta.sin() / theta
    }
}

fn cosh_from_square(d: f64) -> f64 {
    if d.abs() < 1e-8 {
        1.0 + d / 2.0 + d * d / 24.0 + d * d * d / 720.0
    } else if d > 0.0 {
        d.sqrt().cosh()
    } else {
        (-d).sqrt().cos()
    }
}

/// Matrix exponential `e^P` by the trace split `P = alpha I + Q` with
/// `trace(Q) = 0`, so `Q^2 = -det(Q) I` and
/// `e^P = e^alpha (cosh(delta) I + sinhc(delta) Q)`, `delta^2 = -det(Q)`.
///
/// For a rotation-decay generator (antisymmetric plus scalar) this evaluates
/// to the exact decaying rotation, which keeps the frequency sweep free of
/// quadrature-rule noise.
pub fn mat_exp(p: &Matrix2) -> Matrix2 {
    let alpha = 0.5 * p.trace();
    let q = *p - Matrix2::scaled_identity(alpha);
    let d = -q.det();
    let scale = alpha.exp();
    let c = scale * cosh_from_square(d);
    let s = scale * sinhc_from_square(d);
    Matrix2::new(c + s * q.a11, s * q.a12, s * q.a21, c + s * q.a22)
}

/// Inverse by the adjugate. Errors when the determinant is below
/// `1e-14 * max(1, ||P||_inf^2)`, a scale-aware singularity guard.
pub fn mat_inverse(p: &Matrix2) -> Result<Matrix2> {
    let det = p.det();
    let scale = p.norm_inf();
    if det.abs() <= 1e-14 * (scale * scale).max(1.0) {
        return Err(Error::Singular(det));
    }
    let inv = 1.0 / det;
    Ok(Matrix2::new(
        p.a22 * inv,
        -p.a12 * inv,
        -p.a21 * inv,
        p.a11 * inv,
    ))
}
