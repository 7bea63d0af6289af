use thiserror::Error;

/// Errors surfaced by construction and solver entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Matrix handed to a symmetric-only routine is not symmetric.
    #[error("matrix is not symmetric: |a12 - a21| = {0:e}")]
    NonSymmetric(f64),

    /// Determinant below the scaled threshold; no reliable inverse.
    #[error("matrix is singular or near-singular: det = {0:e}")]
    Singular(f64),

    /// The diffusion matrix fails lambda_min((B + B^T)/2) > 0; the
    /// transformed kernel would not decay and the inversion diverges.
    #[error(
        "spectral condition violated: lambda_min of the symmetric part is {0:e} (must be > 0)"
    )]
    SpectralConditionViolated(f64),

    /// Parameter outside its admissible domain.
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Radius search exceeded the hard cap without meeting the tolerance.
    #[error("truncation radius above {0} required; tolerance unattainable")]
    RadiusOverflow(f64),

    /// Two fields compared point-by-point live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
