//! Dense sector Hamiltonians for the two-site Hubbard model and the extended
//! J-U-V-J_ex model on small lattice graphs.
//!
//! Matrix entries are divided by the tunneling J whenever hop_j > 0, so the
//! model/spectra path works in the dimensionless ratios U/4J, V/4J, J_ex/4J
//! throughout; with hop_j = 0 entries stay in raw energy units.

use crate::error::{Error, Result};
use crate::fock::{apply_exchange, apply_hop, Basis, Spin, Statistics};
use crate::graph::LatticeGraph;
use crate::matrix::Matrix;

/// Model couplings in raw energy units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    /// Tunneling J >= 0 (the -J sign convention lives in the matrix elements).
    pub hop_j: f64,
    /// On-site interaction U.
    pub onsite_u: f64,
    /// Nearest-neighbor direct interaction V.
    pub intersite_v: f64,
    /// Nearest-neighbor superexchange J_ex.
    pub superexchange_jex: f64,
    /// Double-well bias (two-site Hubbard model only).
    pub bias_delta: f64,
}

impl CouplingSet {
    pub fn new(hop_j: f64, onsite_u: f64, intersite_v: f64, superexchange_jex: f64) -> Result<Self> {
        Self::with_bias(hop_j, onsite_u, intersite_v, superexchange_jex, 0.0)
    }

    pub fn with_bias(
        hop_j: f64,
        onsite_u: f64,
        intersite_v: f64,
        superexchange_jex: f64,
        bias_delta: f64,
    ) -> Result<Self> {
        if hop_j.is_nan() || hop_j < 0.0 {
            return Err(Error::Domain(format!("hop_j must be >= 0, got {hop_j}")));
        }
        for (name, value) in [
            ("onsite_u", onsite_u),
            ("intersite_v", intersite_v),
            ("superexchange_jex", superexchange_jex),
            ("bias_delta", bias_delta),
        ] {
            if !value.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {value}")));
            }
        }
        Ok(Self { hop_j, onsite_u, intersite_v, superexchange_jex, bias_delta })
    }
}

/// Interaction strengths relative to the kinetic scale: (U/4J, V/4J, J_ex/4J).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessCouplings {
    pub u: f64,
    pub v: f64,
    pub j: f64,
}

impl DimensionlessCouplings {
    pub fn new(u: f64, v: f64, j: f64) -> Self {
        Self { u, v, j }
    }

    /// Raw couplings with J = 1 reproducing these ratios.
    pub fn to_couplings(&self) -> CouplingSet {
        CouplingSet {
            hop_j: 1.0,
            onsite_u: 4.0 * self.u,
            intersite_v: 4.0 * self.v,
            superexchange_jex: 4.0 * self.j,
            bias_delta: 0.0,
        }
    }
}

/// (U/4J, V/4J, J_ex/4J) of a coupling set; requires hop_j > 0.
pub fn to_dimensionless(c: &CouplingSet) -> Result<DimensionlessCouplings> {
    if c.hop_j <= 0.0 {
        return Err(Error::ZeroHopping);
    }
    Ok(DimensionlessCouplings {
        u: c.onsite_u / (4.0 * c.hop_j),
        v: c.intersite_v / (4.0 * c.hop_j),
        j: c.superexchange_jex / (4.0 * c.hop_j),
    })
}

/// Dense real symmetric sector Hamiltonian with its basis attached.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    matrix: Matrix,
    basis: Basis,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }
}

fn check_fermionic(basis: &Basis) -> Result<()> {
    if basis.sector().statistics != Statistics::Fermion {
        return Err(Error::InvalidSector("model builders require a fermionic basis".into()));
    }
    Ok(())
}

fn check_graph(basis: &Basis, graph: &LatticeGraph) -> Result<()> {
    if basis.sector().n_sites != graph.n_sites() {
        return Err(Error::GraphMismatch(format!(
            "basis has {} sites, graph has {}",
            basis.sector().n_sites,
            graph.n_sites()
        )));
    }
    Ok(())
}

/// Accumulates -J hops along every edge, both directions, both spins.
fn add_hopping(m: &mut Matrix, basis: &Basis, graph: &LatticeGraph, hop_j: f64) {
    if hop_j == 0.0 {
        return;
    }
    for (k, state) in basis.states().iter().enumerate() {
        for &(a, b) in graph.edges() {
            for (from, to) in [(a, b), (b, a)] {
                for spin in [Spin::Up, Spin::Down] {
                    if let Some((image, sign)) =
                        apply_hop(state, from, to, spin, Statistics::Fermion)
                    {
                        let row = basis.index_of(&image).expect("hop conserves the sector");
                        m.add(row, k, -hop_j * sign);
                    }
                }
            }
        }
    }
}

fn scale_by_hopping(mut m: Matrix, hop_j: f64) -> Matrix {
    if hop_j > 0.0 {
        m.scale(1.0 / hop_j);
    }
    m
}

/// Two-site-style Hubbard Hamiltonian on a graph:
/// -J Σ hops - (Δ/2)(n_left - n_right) + U Σ n_up n_down.
///
/// The bias acts on total site densities and is defined for two-site graphs
/// only. Entries are in units of J when hop_j > 0.
pub fn build_hubbard(
    basis: &Basis,
    graph: &LatticeGraph,
    c: &CouplingSet,
) -> Result<HamiltonianMatrix> {
    check_fermionic(basis)?;
    check_graph(basis, graph)?;
    if c.bias_delta != 0.0 && graph.n_sites() > 2 {
        return Err(Error::BiasUnsupported { n_sites: graph.n_sites() });
    }
    let mut m = Matrix::zeros(basis.len());
    for (k, state) in basis.states().iter().enumerate() {
        let mut diag = 0.0;
        for site in 0..graph.n_sites() {
            diag += c.onsite_u
                * f64::from(state.occupation(site, Spin::Up))
                * f64::from(state.occupation(site, Spin::Down));
        }
        if c.bias_delta != 0.0 {
            let n_left =
                f64::from(state.occupation(0, Spin::Up)) + f64::from(state.occupation(0, Spin::Down));
            let n_right =
                f64::from(state.occupation(1, Spin::Up)) + f64::from(state.occupation(1, Spin::Down));
            diag += -0.5 * c.bias_delta * (n_left - n_right);
        }
        m.add(k, k, diag);
    }
    add_hopping(&mut m, basis, graph, c.hop_j);
    Ok(HamiltonianMatrix { matrix: scale_by_hopping(m, c.hop_j), basis: basis.clone() })
}

/// Extended J-U-V-J_ex Hamiltonian:
/// Hubbard terms (Δ = 0) plus V Σ_edges n_a n_b minus the J_ex spin exchange.
///
/// The exchange operator Σ_{σσ'} a†_{σa} a†_{σ'b} a_{σb} a_{σ'a} splits into
/// same-spin density products n_{σa} n_{σb} (diagonal) and the opposite-spin
/// pair swap; on singly occupied sites it acts as the spin permutation, so a
/// polarized edge contributes V - J_ex while the singlet combination is
/// pushed up by J_ex. That reproduces the closed-form singlet and triplet
/// energies of the two-site cell.
pub fn build_juvj(
    basis: &Basis,
    graph: &LatticeGraph,
    c: &CouplingSet,
) -> Result<HamiltonianMatrix> {
    check_fermionic(basis)?;
    check_graph(basis, graph)?;
    if c.bias_delta != 0.0 {
        return Err(Error::NonzeroBias { delta: c.bias_delta });
    }
    let mut m = Matrix::zeros(basis.len());
    for (k, state) in basis.states().iter().enumerate() {
        let mut diag = 0.0;
        for site in 0..graph.n_sites() {
            diag += c.onsite_u
                * f64::from(state.occupation(site, Spin::Up))
                * f64::from(state.occupation(site, Spin::Down));
        }
        for &(a, b) in graph.edges() {
            let up_a = f64::from(state.occupation(a, Spin::Up));
            let dn_a = f64::from(state.occupation(a, Spin::Down));
            let up_b = f64::from(state.occupation(b, Spin::Up));
            let dn_b = f64::from(state.occupation(b, Spin::Down));
            diag += c.intersite_v * (up_a + dn_a) * (up_b + dn_b);
            diag += -c.superexchange_jex * (up_a * up_b + dn_a * dn_b);
        }
        m.add(k, k, diag);
        if c.superexchange_jex != 0.0 {
            for &(a, b) in graph.edges() {
                if let Some((image, sign)) = apply_exchange(state, a, b) {
                    let row = basis.index_of(&image).expect("exchange conserves the sector");
                    m.add(row, k, -c.superexchange_jex * sign);
                }
            }
        }
    }
    add_hopping(&mut m, basis, graph, c.hop_j);
    Ok(HamiltonianMatrix { matrix: scale_by_hopping(m, c.hop_j), basis: basis.clone() })
}
