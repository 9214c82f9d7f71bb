//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected p = {expected}, got p = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a lower-triangular matrix with positive diagonal: {reason}")]
    NotTriangular { reason: String },

    #[error("not skew-Hermitian: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    NotSkewHermitian { residual: f64, tolerance: f64 },

    /// The trace pairing produced an imaginary part beyond roundoff.  This
    /// only happens when an input matrix violates the skew-Hermitian
    /// invariant, so it signals corrupted inputs rather than a numerical
    /// accident.
    #[error("pairing trace has imaginary residue {residue:.3e} (tolerance {tolerance:.3e}); an input is not skew-Hermitian")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("the zero matrix has no spherical coordinates")]
    ZeroVector,

    #[error("matrix is not in the principal orbit: -i*m is not positive definite")]
    NotInPrincipalOrbit,

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    #[error("non-finite sample: {0}")]
    NonFiniteSample(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
