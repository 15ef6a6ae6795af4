//! Cluster experiments: state counting, the antiferromagnet-to-ferromagnet
//! scan on small cells, and symmetry reduction checked against full-sector
//! diagonalization.
//!
//! Scan rows are independent; with the `parallel` feature they are evaluated
//! on a rayon pool and merged in ascending-j order, the sequential path is
//! always available for compare-and-benchmark runs.

use std::collections::HashMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::eigen::jacobi_eigen;
use crate::error::{Error, Result};
use crate::fock::{enumerate_states, s_squared_matrix, Basis, Statistics};
use crate::graph::LatticeGraph;
use crate::matrix::Matrix;
use crate::model::{build_juvj, CouplingSet, DimensionlessCouplings, HamiltonianMatrix};

/// Sector-dimension cap for dense scans.
pub const DIMENSION_CAP: usize = 10_000;

/// Energy window inside which singlet and polarized sectors count as
/// degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Bisection tolerance for refining the scan crossing in j.
pub const CROSSING_TOLERANCE: f64 = 1e-8;

/// Numerical tolerance for the generator-commutation precondition.
pub const COMMUTATION_TOLERANCE: f64 = 1e-10;

/// State counts for two particles on an n-site cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateCounts {
    Fermion {
        /// S_z = 0 sector size, n².
        sz_zero: usize,
        /// Both fully polarized sectors together, 2 C(n, 2).
        polarized: usize,
        /// True S = 0 multiplicity inside the S_z = 0 sector.
        singlet: usize,
        /// True S = 1 multiplicity inside the S_z = 0 sector.
        triplet_sz_zero: usize,
    },
    Boson {
        /// Spinless two-boson configurations, C(n + 1, 2).
        total: usize,
    },
}

/// Counts two-particle cluster states by enumeration, and for fermions
/// splits the S_z = 0 sector into true spin multiplets via the S² spectrum.
pub fn count_cluster_states(n_sites: usize, statistics: Statistics) -> Result<StateCounts> {
    match statistics {
        Statistics::Boson => {
            let basis = enumerate_states(n_sites, 2, 0, Statistics::Boson)?;
            Ok(StateCounts::Boson { total: basis.len() })
        }
        Statistics::Fermion => {
            let sz_zero_basis = enumerate_states(n_sites, 1, 1, Statistics::Fermion)?;
            let polarized = if n_sites >= 2 {
                2 * enumerate_states(n_sites, 2, 0, Statistics::Fermion)?.len()
            } else {
                0
            };
            let s2 = s_squared_matrix(&sz_zero_basis);
            let eig = jacobi_eigen(&s2)?;
            let singlet = eig.values.iter().filter(|&&x| x.abs() < 1e-6).count();
            let triplet_sz_zero = eig.values.iter().filter(|&&x| (x - 2.0).abs() < 1e-6).count();
            Ok(StateCounts::Fermion {
                sz_zero: sz_zero_basis.len(),
                polarized,
                singlet,
                triplet_sz_zero,
            })
        }
    }
}

/// Which sector owns the ground state at one scan row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundLabel {
    Afm,
    Fm,
    Degenerate,
}

impl std::fmt::Display for GroundLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroundLabel::Afm => write!(f, "afm"),
            GroundLabel::Fm => write!(f, "fm"),
            GroundLabel::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// One row of the scan: energies in units of J at fixed J_ex/4J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub jex_over_4j: f64,
    /// Lowest energy among true S = 0 states of the S_z = 0 sector.
    pub e_afm: f64,
    /// Ground energy of the maximally polarized sector.
    pub e_fm: f64,
    pub ground: GroundLabel,
}

/// Scan output: rows ascending in j plus the refined crossing, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub operating_point: (f64, f64),
    pub rows: Vec<ScanRow>,
    pub crossing: Option<f64>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn label_for(e_afm: f64, e_fm: f64) -> GroundLabel {
    if e_afm < e_fm - DEGENERACY_TOLERANCE {
        GroundLabel::Afm
    } else if e_fm < e_afm - DEGENERACY_TOLERANCE {
        GroundLabel::Fm
    } else {
        GroundLabel::Degenerate
    }
}

/// Prepared bases and the S = 0 projector for one graph; rows share it.
struct ScanContext {
    graph: LatticeGraph,
    u: f64,
    v: f64,
    sz_zero: Basis,
    polarized: Basis,
    /// Orthonormal S = 0 eigenvectors spanning the singlet subspace.
    singlet_columns: Vec<Vec<f64>>,
}

impl ScanContext {
    fn new(graph: &LatticeGraph, u: f64, v: f64) -> Result<Self> {
        let n = graph.n_sites();
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidSector(format!(
                "half filling needs an even number of sites, got {n}"
            )));
        }
        let half = n / 2;
        let dim = binomial(n, half) * binomial(n, half);
        if dim > DIMENSION_CAP {
            return Err(Error::SectorTooLarge { dim, cap: DIMENSION_CAP });
        }
        let sz_zero = enumerate_states(n, half, half, Statistics::Fermion)?;
        let polarized = enumerate_states(n, n, 0, Statistics::Fermion)?;
        // S² is j-independent; the singlet projector is computed once
        let s2 = s_squared_matrix(&sz_zero);
        let eig = jacobi_eigen(&s2)?;
        let singlet_columns: Vec<Vec<f64>> = eig
            .values
            .iter()
            .zip(eig.vectors)
            .filter(|(value, _)| value.abs() < 1e-6)
            .map(|(_, vector)| vector)
            .collect();
        if singlet_columns.is_empty() {
            return Err(Error::EmptyBlock);
        }
        Ok(Self { graph: graph.clone(), u, v, sz_zero, polarized, singlet_columns })
    }

    fn couplings(&self, j: f64) -> CouplingSet {
        DimensionlessCouplings::new(self.u, self.v, j).to_couplings()
    }

    fn row(&self, j: f64) -> Result<ScanRow> {
        let c = self.couplings(j);
        let h = build_juvj(&self.sz_zero, &self.graph, &c)?;
        let singlet_block = h.matrix().project(&self.singlet_columns);
        let e_afm = jacobi_eigen(&singlet_block)?.values[0];
        let hp = build_juvj(&self.polarized, &self.graph, &c)?;
        let e_fm = jacobi_eigen(hp.matrix())?.values[0];
        Ok(ScanRow { jex_over_4j: j, e_afm, e_fm, ground: label_for(e_afm, e_fm) })
    }
}

fn grid(j_max: f64, steps: usize) -> Vec<f64> {
    let dj = j_max / (steps - 1) as f64;
    (0..steps).map(|k| k as f64 * dj).collect()
}

fn refine_crossing(context: &ScanContext, mut lo: f64, mut hi: f64) -> Result<f64> {
    let gap = |j: f64| -> Result<f64> {
        let row = context.row(j)?;
        Ok(row.e_afm - row.e_fm)
    };
    if gap(lo)? > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }
    while (hi - lo).abs() > CROSSING_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn assemble(context: &ScanContext, rows: Vec<ScanRow>) -> Result<ScanResult> {
    let mut crossing = None;
    for pair in rows.windows(2) {
        if pair[0].ground != pair[1].ground && pair[0].ground == GroundLabel::Afm {
            crossing = Some(refine_crossing(context, pair[0].jex_over_4j, pair[1].jex_over_4j)?);
            break;
        }
    }
    Ok(ScanResult { operating_point: (context.u, context.v), rows, crossing })
}

fn validate_scan_args(j_max: f64, steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::Domain(format!("scan needs at least 2 steps, got {steps}")));
    }
    if j_max.is_nan() || j_max <= 0.0 {
        return Err(Error::Domain(format!("j_max must be > 0, got {j_max}")));
    }
    Ok(())
}

/// Sequential scan over the uniform j grid (always available; the default
/// [`rvb_scan`] entry point delegates here when the `parallel` feature is
/// off).
pub fn rvb_scan_sequential(
    graph: &LatticeGraph,
    u: f64,
    v: f64,
    j_max: f64,
    steps: usize,
) -> Result<ScanResult> {
    validate_scan_args(j_max, steps)?;
    let context = ScanContext::new(graph, u, v)?;
    let rows = grid(j_max, steps)
        .into_iter()
        .map(|j| context.row(j))
        .collect::<Result<Vec<_>>>()?;
    assemble(&context, rows)
}

/// Scans the half-filled sector of `graph` over j in [0, j_max]:
/// for each grid point the S_z = 0 sector and the maximally polarized sector
/// are built and diagonalized, the lowest singlet and polarized energies
/// recorded, and the ground label assigned within
/// [`DEGENERACY_TOLERANCE`]. A label flip is refined by bisection to
/// [`CROSSING_TOLERANCE`].
#[cfg(feature = "parallel")]
pub fn rvb_scan(
    graph: &LatticeGraph,
    u: f64,
    v: f64,
    j_max: f64,
    steps: usize,
) -> Result<ScanResult> {
    validate_scan_args(j_max, steps)?;
    let context = ScanContext::new(graph, u, v)?;
    let rows = grid(j_max, steps)
        .into_par_iter()
        .map(|j| context.row(j))
        .collect::<Result<Vec<_>>>()?;
    assemble(&context, rows)
}

#[cfg(not(feature = "parallel"))]
pub fn rvb_scan(
    graph: &LatticeGraph,
    u: f64,
    v: f64,
    j_max: f64,
    steps: usize,
) -> Result<ScanResult> {
    rvb_scan_sequential(graph, u, v, j_max, steps)
}

/// Configuration of the scan dataset; defaults reproduce the operating point
/// u = 3, v = 0 on j in [0, 0.5] with 101 rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub graph: LatticeGraph,
    pub u: f64,
    pub v: f64,
    pub j_max: f64,
    pub steps: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { graph: LatticeGraph::plaquette_ring(), u: 3.0, v: 0.0, j_max: 0.5, steps: 101 }
    }
}

/// Deterministic scan dataset for a named configuration; the CLI serializes
/// the result as CSV (columns jex_over_4j, e_afm, e_fm, ground).
pub fn scan_dataset(config: &ScanConfig) -> Result<ScanResult> {
    rvb_scan(&config.graph, config.u, config.v, config.j_max, config.steps)
}

/// A group of site permutations commuting with the Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryGroup {
    generators: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    /// Builds from generators, checking each is a site bijection mapping
    /// graph edges to graph edges.
    pub fn new(generators: Vec<Vec<usize>>, graph: &LatticeGraph) -> Result<Self> {
        let n = graph.n_sites();
        for (k, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Domain(format!(
                    "generator {k} has length {}, graph has {n} sites",
                    g.len()
                )));
            }
            let mut seen = vec![false; n];
            for &image in g {
                if image >= n || seen[image] {
                    return Err(Error::Domain(format!("generator {k} is not a bijection")));
                }
                seen[image] = true;
            }
            for &(a, b) in graph.edges() {
                if !graph.has_edge(g[a], g[b]) {
                    return Err(Error::Domain(format!(
                        "generator {k} maps edge ({a},{b}) to non-edge ({},{})",
                        g[a], g[b]
                    )));
                }
            }
        }
        Ok(Self { generators })
    }

    /// The identity-only group.
    pub fn trivial(n_sites: usize) -> Self {
        Self { generators: vec![(0..n_sites).collect()] }
    }

    /// Swap of the two wells.
    pub fn swap_pair() -> Self {
        Self { generators: vec![vec![1, 0]] }
    }

    /// Full dihedral group of the square ring (order 8): quarter rotation
    /// plus an edge reflection.
    pub fn dihedral_square() -> Self {
        Self { generators: vec![vec![1, 2, 3, 0], vec![1, 0, 3, 2]] }
    }

    /// Klein four-group of the square ring: half rotation and the two
    /// edge-bisector reflections, i.e. the even permutations of the dihedral
    /// group.
    pub fn rectangle() -> Self {
        Self { generators: vec![vec![2, 3, 0, 1], vec![1, 0, 3, 2]] }
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// All group elements generated by closure under composition.
    pub fn elements(&self) -> Vec<Vec<usize>> {
        let n = self.generators.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..n).collect();
        let mut elements = vec![identity];
        // grow by right-composition with generators until nothing new appears
        loop {
            let mut added = false;
            let snapshot = elements.clone();
            for g in &snapshot {
                for h in &self.generators {
                    let gh: Vec<usize> = (0..n).map(|i| g[h[i]]).collect();
                    if !elements.contains(&gh) {
                        elements.push(gh);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        elements
    }
}

/// The action of a site permutation on a sector basis: a signed permutation
/// of basis states (fermionic reordering signs included).
fn permutation_action(basis: &Basis, perm: &[usize]) -> (Vec<usize>, Vec<f64>) {
    let n = basis.sector().n_sites;
    let dim = basis.len();
    let mut target = vec![0usize; dim];
    let mut sign = vec![1.0f64; dim];
    for (k, state) in basis.states().iter().enumerate() {
        // occupied modes in ascending order, then their images under the
        // permutation; the fermionic sign is the parity of the sort
        let mut modes: Vec<usize> = Vec::new();
        for site in 0..n {
            if state.up_occupations()[site] == 1 {
                modes.push(perm[site]);
            }
        }
        for site in 0..n {
            if state.down_occupations()[site] == 1 {
                modes.push(n + perm[site]);
            }
        }
        let mut parity = 0u32;
        for i in 0..modes.len() {
            for j in (i + 1)..modes.len() {
                if modes[i] > modes[j] {
                    parity += 1;
                }
            }
        }
        let mut up = vec![0u8; n];
        let mut down = vec![0u8; n];
        for site in 0..n {
            if state.up_occupations()[site] == 1 {
                up[perm[site]] = 1;
            }
            if state.down_occupations()[site] == 1 {
                down[perm[site]] = 1;
            }
        }
        let image = crate::fock::FockState::fermion(&up, &down).expect("permutation image");
        target[k] = basis.index_of(&image).expect("permutation stays in sector");
        sign[k] = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
    }
    (target, sign)
}

/// max |U(g) H - H U(g)| for a signed permutation action
/// U_{target[k], k} = sign[k].
fn commutator_deviation(h: &Matrix, target: &[usize], sign: &[f64]) -> f64 {
    let dim = h.dim();
    let mut inverse = vec![0usize; dim];
    for (k, &t) in target.iter().enumerate() {
        inverse[t] = k;
    }
    let mut worst = 0.0f64;
    for r in 0..dim {
        let k = inverse[r];
        for j in 0..dim {
            let uh = sign[k] * h.get(k, j); // (U H)_{r,j}
            let hu = h.get(r, target[j]) * sign[j]; // (H U)_{r,j}
            worst = worst.max((uh - hu).abs());
        }
    }
    worst
}

/// The trivial-representation block of `h` under the group.
#[derive(Debug, Clone)]
pub struct ReducedBlock {
    pub matrix: Matrix,
    pub dimension: usize,
}

/// Projects `h` onto the trivial-representation subspace: normalized orbit
/// sums of basis states with fermionic permutation signs.
///
/// Every generator must commute with `h` to [`COMMUTATION_TOLERANCE`].
/// The lowest eigenvalue of the returned block is always >= the full ground
/// energy, with equality whenever the ground vector is even under every
/// group element.
pub fn symmetry_reduce(h: &HamiltonianMatrix, group: &SymmetryGroup) -> Result<ReducedBlock> {
    let basis = h.basis();
    let dim = basis.len();
    for (k, generator) in group.generators().iter().enumerate() {
        if generator.len() != basis.sector().n_sites {
            return Err(Error::DimensionMismatch {
                expected: basis.sector().n_sites,
                got: generator.len(),
            });
        }
        let (target, sign) = permutation_action(basis, generator);
        let deviation = commutator_deviation(h.matrix(), &target, &sign);
        if deviation > COMMUTATION_TOLERANCE {
            return Err(Error::NonCommuting { generator: k, deviation });
        }
    }
    let elements = group.elements();
    let actions: Vec<(Vec<usize>, Vec<f64>)> =
        elements.iter().map(|g| permutation_action(basis, g)).collect();

    let mut visited = vec![false; dim];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for seed in 0..dim {
        if visited[seed] {
            continue;
        }
        // orbit sum: sum_g U(g) |seed>
        let mut coeffs: HashMap<usize, f64> = HashMap::new();
        for (target, sign) in &actions {
            *coeffs.entry(target[seed]).or_insert(0.0) += sign[seed];
        }
        for &member in coeffs.keys() {
            visited[member] = true;
        }
        let norm_sq: f64 = coeffs.values().map(|c| c * c).sum();
        if norm_sq < 1e-18 {
            continue; // orbit cancels: no trivial-representation component
        }
        let norm = norm_sq.sqrt();
        let mut column = vec![0.0; dim];
        for (member, coeff) in coeffs {
            column[member] = coeff / norm;
        }
        columns.push(column);
    }
    if columns.is_empty() {
        return Err(Error::EmptyBlock);
    }
    let matrix = h.matrix().project(&columns);
    Ok(ReducedBlock { dimension: columns.len(), matrix })
}
