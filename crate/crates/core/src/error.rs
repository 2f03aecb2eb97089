use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Axiom violations are not errors: `validate` reports them in a
/// [`ValidationReport`](crate::algebra::ValidationReport). Errors here mean the
/// input could not be interpreted at all or a computation could not proceed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("numerical degeneracy: eigenvalue cluster {cluster}")]
    NumericalDegeneracy { cluster: String },

    /// Character values are not rational; callers fall back to floating mode.
    #[error("character values are not rational: {0}")]
    Inexact(String),

    #[error("representation is not a homomorphism: {0}")]
    NotHomomorphic(String),

    #[error("representation does not afford the standard feasible trace: {0}")]
    NotAffordingZeta(String),

    #[error("algebra is not in S: {0}")]
    NotInS(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("size {rank} exceeds guard {limit}")]
    RankGuard { rank: usize, limit: usize },

    #[error("not an association scheme: {0}")]
    NotAScheme(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
