//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("DomainError: {0}")]
    Domain(String),

    /// Particle counts incompatible with the lattice or statistics.
    #[error("InvalidSector: {0}")]
    InvalidSector(String),

    /// Vector or matrix dimension does not match the basis.
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Graph does not match the basis it is paired with.
    #[error("GraphMismatch: {0}")]
    GraphMismatch(String),

    /// A double-well bias was requested on a graph with more than two sites.
    #[error("BiasUnsupported: bias is defined for two-site graphs only (graph has {n_sites} sites)")]
    BiasUnsupported { n_sites: usize },

    /// The extended model carries no bias term.
    #[error("NonzeroBias: bias_delta = {delta} (the J-U-V-J_ex model requires bias_delta = 0)")]
    NonzeroBias { delta: f64 },

    /// Dimensionless ratios require hop_j > 0.
    #[error("ZeroHopping: dimensionless couplings are undefined at hop_j = 0")]
    ZeroHopping,

    /// Eigensolver input is not symmetric.
    #[error("NonSymmetric: entries ({i},{j}) and ({j},{i}) differ")]
    NonSymmetric { i: usize, j: usize },

    /// Frequency set fails the internal consistency residual.
    #[error("InconsistentFrequencies: relative residual {residual:.3e} exceeds {tolerance:.1e}")]
    InconsistentFrequencies { residual: f64, tolerance: f64 },

    /// Triplet already below singlet at j = 0; no transition to bracket.
    #[error("NoCrossing: triplet energy below singlet energy already at j = 0")]
    NoCrossing,

    /// A symmetry generator does not commute with the Hamiltonian.
    #[error("NonCommuting: generator {generator} deviates from commuting by {deviation:.3e}")]
    NonCommuting { generator: usize, deviation: f64 },

    /// Symmetry projection left no trivial-representation states.
    #[error("EmptyBlock: trivial-representation subspace is empty")]
    EmptyBlock,

    /// Requested sector exceeds the dense-diagonalization cap.
    #[error("SectorTooLarge: sector dimension {dim} exceeds cap {cap}")]
    SectorTooLarge { dim: usize, cap: usize },
}

impl Error {
    /// Stable error name, used by the CLI when mapping errors to stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::InvalidSector(_) => "InvalidSector",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::GraphMismatch(_) => "GraphMismatch",
            Error::BiasUnsupported { .. } => "BiasUnsupported",
            Error::NonzeroBias { .. } => "NonzeroBias",
            Error::ZeroHopping => "ZeroHopping",
            Error::NonSymmetric { .. } => "NonSymmetric",
            Error::InconsistentFrequencies { .. } => "InconsistentFrequencies",
            Error::NoCrossing => "NoCrossing",
            Error::NonCommuting { .. } => "NonCommuting",
            Error::EmptyBlock => "EmptyBlock",
            Error::SectorTooLarge { .. } => "SectorTooLarge",
        }
    }
}
