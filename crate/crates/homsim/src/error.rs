//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Tensor factors declare the same subsystem name.
    #[error("subsystem names overlap between tensor factors: {0}")]
    OverlappingSubsystems(String),

    /// Two states or operators live on different spaces.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// A subsystem or level name is not declared in the space.
    #[error("unknown subsystem or level: {0}")]
    UnknownSubsystem(String),

    /// A numeric parameter is outside its domain.
    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// A state failed its normalization check.
    #[error("state is not normalized: {0}")]
    NotNormalized(String),

    /// A matrix failed the density-matrix validity checks.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// A mode transform failed the unitarity check.
    #[error("matrix is not unitary: {0}")]
    NotUnitary(String),

    /// A Fock expansion exceeded the photon-number cutoff.
    #[error("photon number exceeds cutoff: {0}")]
    Truncation(String),

    /// A scenario or sweep configuration is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),
}
