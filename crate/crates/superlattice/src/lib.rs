//! Exact diagonalization toolkit for spin ordering of ultracold atoms in
//! optical superlattices.
//!
//! The crate covers the full pipeline from trap-level optics to cluster
//! magnetism:
//!
//! * [`optics`]: dipole potential, detuning classification, superlattice
//!   potential profile, Josephson frequency, recoil energy, boson/fermion
//!   species classification.
//! * [`fock`]: occupation-number bases for fermions and spinless bosons on
//!   small lattices, second-quantized operators with Jordan-Wigner signs,
//!   total-spin classification.
//! * [`model`]: dense Hamiltonians for the two-site Hubbard model and the
//!   extended J-U-V-J_ex model on arbitrary small lattice graphs.
//! * [`spectra`]: an in-repo Jacobi eigensolver, closed-form singlet/triplet
//!   energies, the singlet-triplet transition point, and the map between
//!   couplings and dynamic evolution frequencies (both directions).
//! * [`cluster`]: state counting, the antiferromagnet-to-ferromagnet scan on
//!   4-site cells, and symmetry reduction against full-sector diagonalization.
//!
//! Energies on the model/spectra path are expressed in units of the tunneling
//! J; interaction strengths enter as the dimensionless ratios U/4J, V/4J and
//! J_ex/4J. All operations are pure functions over immutable inputs, so
//! parameter grids can be evaluated concurrently; with the default `parallel`
//! feature the cluster scan distributes rows over a rayon pool.

pub mod cluster;
pub mod constants;
pub mod eigen;
pub mod error;
pub mod fock;
pub mod graph;
pub mod matrix;
pub mod model;
pub mod optics;
pub mod spectra;

pub use cluster::{
    count_cluster_states, rvb_scan, rvb_scan_sequential, scan_dataset, symmetry_reduce,
    GroundLabel, ScanConfig, ScanResult, ScanRow, StateCounts, SymmetryGroup,
};
pub use error::{Error, Result};
pub use fock::{enumerate_states, Basis, FockState, Sector, Spin, SpinLabel, Statistics};
pub use graph::LatticeGraph;
pub use matrix::Matrix;
pub use model::{
    build_hubbard, build_juvj, to_dimensionless, CouplingSet, DimensionlessCouplings,
    HamiltonianMatrix,
};
pub use spectra::{
    eigen_symmetric, evolution_frequencies, extract_couplings, singlet_energy, transition_point,
    triplet_energy, FrequencySet, SpectrumResult,
};
