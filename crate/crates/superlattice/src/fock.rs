//! Occupation-number bases and second-quantized operators on small lattices.
//!
//! Fermionic modes are ordered all spin-up sites ascending, then all
//! spin-down sites ascending; a basis state is the product of creation
//! operators in ascending mode order applied to the vacuum. Every operator
//! application counts occupied modes below the touched mode (Jordan-Wigner
//! parity), so signs are derived, never tabulated.
//!
//! Spinless bosons reuse the `up` occupation array as plain particle counts
//! with an empty `down` component.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Tolerance for deciding that a vector is a total-spin eigenvector.
pub const SPIN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Fermion => write!(f, "fermion"),
            Statistics::Boson => write!(f, "boson"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

/// Per-site occupations, one entry per site and spin component.
///
/// Fermions: each entry is 0 or 1. Spinless bosons: `up` holds counts and
/// `down` is empty. Ordering (and therefore basis order) is lexicographic on
/// the `(up, down)` occupation encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    up: Vec<u8>,
    down: Vec<u8>,
}

impl FockState {
    pub fn fermion(up: &[u8], down: &[u8]) -> Result<Self> {
        if up.len() != down.len() {
            return Err(Error::InvalidSector(format!(
                "up/down occupation lists differ in length: {} vs {}",
                up.len(),
                down.len()
            )));
        }
        if up.iter().chain(down).any(|&o| o > 1) {
            return Err(Error::InvalidSector("fermionic occupations must be 0 or 1".into()));
        }
        Ok(Self { up: up.to_vec(), down: down.to_vec() })
    }

    pub fn boson(counts: &[u8]) -> Self {
        Self { up: counts.to_vec(), down: Vec::new() }
    }

    pub fn n_sites(&self) -> usize {
        self.up.len()
    }

    pub fn up_occupations(&self) -> &[u8] {
        &self.up
    }

    pub fn down_occupations(&self) -> &[u8] {
        &self.down
    }

    pub fn occupation(&self, site: usize, spin: Spin) -> u8 {
        match spin {
            Spin::Up => self.up[site],
            Spin::Down => self.down[site],
        }
    }

    pub fn n_up(&self) -> usize {
        self.up.iter().map(|&o| o as usize).sum()
    }

    pub fn n_down(&self) -> usize {
        self.down.iter().map(|&o| o as usize).sum()
    }

    fn mode(&self, site: usize, spin: Spin) -> usize {
        match spin {
            Spin::Up => site,
            Spin::Down => self.n_sites() + site,
        }
    }

    fn mode_occupied(&self, mode: usize) -> bool {
        let n = self.n_sites();
        if mode < n {
            self.up[mode] == 1
        } else {
            self.down[mode - n] == 1
        }
    }

    /// Number of occupied fermionic modes strictly below `mode`.
    fn parity_count(&self, mode: usize) -> u32 {
        let n = self.n_sites();
        let mut count: u32 = 0;
        for m in 0..mode.min(n) {
            count += self.up[m] as u32;
        }
        if mode > n {
            for m in 0..(mode - n) {
                count += self.down[m] as u32;
            }
        }
        count
    }

    /// Applies a fermionic annihilation operator at (site, spin).
    pub(crate) fn annihilate(&self, site: usize, spin: Spin) -> Option<(FockState, f64)> {
        let mode = self.mode(site, spin);
        if !self.mode_occupied(mode) {
            return None;
        }
        let sign = if self.parity_count(mode).is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut next = self.clone();
        match spin {
            Spin::Up => next.up[site] = 0,
            Spin::Down => next.down[site] = 0,
        }
        Some((next, sign))
    }

    /// Applies a fermionic creation operator at (site, spin).
    pub(crate) fn create(&self, site: usize, spin: Spin) -> Option<(FockState, f64)> {
        let mode = self.mode(site, spin);
        if self.mode_occupied(mode) {
            return None;
        }
        let sign = if self.parity_count(mode).is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut next = self.clone();
        match spin {
            Spin::Up => next.up[site] = 1,
            Spin::Down => next.down[site] = 1,
        }
        Some((next, sign))
    }

    /// Applies a product of elementary operators; `ops` lists them in
    /// application order, i.e. the rightmost factor of the operator string
    /// comes first. Returns the image state and the accumulated sign, or
    /// `None` if any factor annihilates.
    pub(crate) fn apply_string(&self, ops: &[(OpKind, usize, Spin)]) -> Option<(FockState, f64)> {
        let mut state = self.clone();
        let mut amplitude = 1.0;
        for &(kind, site, spin) in ops {
            let (next, sign) = match kind {
                OpKind::Annihilate => state.annihilate(site, spin)?,
                OpKind::Create => state.create(site, spin)?,
            };
            state = next;
            amplitude *= sign;
        }
        Some((state, amplitude))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OpKind {
    Create,
    Annihilate,
}

/// Particle-number sector labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sector {
    pub n_sites: usize,
    pub n_up: usize,
    pub n_down: usize,
    pub statistics: Statistics,
}

/// Ordered, indexed list of all states in one particle-number sector.
#[derive(Debug, Clone)]
pub struct Basis {
    states: Vec<FockState>,
    index: HashMap<FockState, usize>,
    sector: Sector,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &FockState {
        &self.states[i]
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn index_of(&self, state: &FockState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }
}

/// Enumerates every occupation configuration of the sector, ordered
/// lexicographically on the `(up, down)` occupation encoding.
pub fn enumerate_states(
    n_sites: usize,
    n_up: usize,
    n_down: usize,
    statistics: Statistics,
) -> Result<Basis> {
    if n_sites == 0 {
        return Err(Error::InvalidSector("n_sites must be >= 1".into()));
    }
    let states = match statistics {
        Statistics::Fermion => {
            if n_up > n_sites || n_down > n_sites {
                return Err(Error::InvalidSector(format!(
                    "fermionic counts ({n_up} up, {n_down} down) exceed {n_sites} sites"
                )));
            }
            let ups = occupation_words(n_sites, n_up);
            let downs = occupation_words(n_sites, n_down);
            let mut states = Vec::with_capacity(ups.len() * downs.len());
            for u in &ups {
                for d in &downs {
                    states.push(FockState { up: u.clone(), down: d.clone() });
                }
            }
            states
        }
        Statistics::Boson => {
            if n_down != 0 {
                return Err(Error::InvalidSector(
                    "spinless bosons carry no down component; n_down must be 0".into(),
                ));
            }
            boson_counts(n_sites, n_up).into_iter().map(|c| FockState::boson(&c)).collect()
        }
    };
    let mut states = states;
    states.sort();
    let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(Basis { states, index, sector: Sector { n_sites, n_up, n_down, statistics } })
}

fn occupation_words(n_sites: usize, count: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = vec![0u8; n_sites];
    fn rec(current: &mut Vec<u8>, site: usize, remaining: usize, out: &mut Vec<Vec<u8>>) {
        let slots = current.len() - site;
        if remaining > slots {
            return;
        }
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        current[site] = 1;
        rec(current, site + 1, remaining - 1, out);
        current[site] = 0;
        rec(current, site + 1, remaining, out);
    }
    rec(&mut current, 0, count, &mut out);
    out
}

fn boson_counts(n_sites: usize, total: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = vec![0u8; n_sites];
    fn rec(current: &mut Vec<u8>, site: usize, remaining: usize, out: &mut Vec<Vec<u8>>) {
        if site + 1 == current.len() {
            current[site] = remaining as u8;
            out.push(current.clone());
            current[site] = 0;
            return;
        }
        for here in 0..=remaining {
            current[site] = here as u8;
            rec(current, site + 1, remaining - here, out);
        }
        current[site] = 0;
    }
    if n_sites > 0 {
        rec(&mut current, 0, total, &mut out);
    }
    out
}

/// Image of a†_{to,spin} a_{from,spin} on `s`.
///
/// `None` signals annihilation (empty source or, for fermions, an occupied
/// target). The amplitude is the Jordan-Wigner sign for fermions and
/// sqrt(n_from (n_to + 1)) for bosons.
pub fn apply_hop(
    s: &FockState,
    from_site: usize,
    to_site: usize,
    spin: Spin,
    statistics: Statistics,
) -> Option<(FockState, f64)> {
    assert!(from_site != to_site, "hop requires distinct sites");
    match statistics {
        Statistics::Fermion => s.apply_string(&[
            (OpKind::Annihilate, from_site, spin),
            (OpKind::Create, to_site, spin),
        ]),
        Statistics::Boson => {
            let n_from = s.up[from_site] as f64;
            if n_from == 0.0 {
                return None;
            }
            let n_to = s.up[to_site] as f64;
            let mut next = s.clone();
            next.up[from_site] -= 1;
            next.up[to_site] += 1;
            Some((next, (n_from * (n_to + 1.0)).sqrt()))
        }
    }
}

/// Image of the opposite-spin pair swap
/// sum_sigma a†_{sigma,a} a†_{sigma-bar,b} a_{sigma,b} a_{sigma-bar,a} on `s`
/// (fermions only).
///
/// At most one term of the spin sum survives on any product state, so a
/// single optional image is well defined; `None` when the occupations do not
/// permit a swap.
pub fn apply_exchange(s: &FockState, site_a: usize, site_b: usize) -> Option<(FockState, f64)> {
    assert!(site_a != site_b, "exchange requires distinct sites");
    for (sigma, sigma_bar) in [(Spin::Up, Spin::Down), (Spin::Down, Spin::Up)] {
        // rightmost operator first: a_{sigma-bar,a}, a_{sigma,b}, then create
        if let Some(result) = s.apply_string(&[
            (OpKind::Annihilate, site_a, sigma_bar),
            (OpKind::Annihilate, site_b, sigma),
            (OpKind::Create, site_b, sigma_bar),
            (OpKind::Create, site_a, sigma),
        ]) {
            return Some(result);
        }
    }
    None
}

/// Total-spin label of a basis vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinLabel {
    /// S² and S_z eigenvector: stores 2S and 2S_z so half-integers are exact.
    Definite { two_s: u32, two_sz: i32 },
    /// Not an S² eigenvector within tolerance.
    Mixed,
}

impl SpinLabel {
    pub fn s(&self) -> Option<f64> {
        match self {
            SpinLabel::Definite { two_s, .. } => Some(*two_s as f64 / 2.0),
            SpinLabel::Mixed => None,
        }
    }

    pub fn sz(&self) -> Option<f64> {
        match self {
            SpinLabel::Definite { two_sz, .. } => Some(*two_sz as f64 / 2.0),
            SpinLabel::Mixed => None,
        }
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinLabel::Definite { two_s, two_sz } => {
                write!(f, "S={} Sz={}", half(*two_s as i32), half(*two_sz))
            }
            SpinLabel::Mixed => write!(f, "mixed"),
        }
    }
}

fn half(twice: i32) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

/// Dense matrix of the total-spin-squared operator
/// S² = S_z² + (S⁺S⁻ + S⁻S⁺)/2 on the sector.
///
/// For spinless bosons this is the zero operator.
pub fn s_squared_matrix(basis: &Basis) -> Matrix {
    let dim = basis.len();
    let mut m = Matrix::zeros(dim);
    if basis.sector().statistics == Statistics::Boson {
        return m;
    }
    let n = basis.sector().n_sites;
    let sz = (basis.sector().n_up as f64 - basis.sector().n_down as f64) / 2.0;
    for (k, state) in basis.states().iter().enumerate() {
        m.add(k, k, sz * sz);
        // pairwise (S_i⁺ S_j⁻ + S_i⁻ S_j⁺)/2; S_i⁺ = a†_{up,i} a_{down,i}
        for i in 0..n {
            for j in 0..n {
                if let Some((image, amp)) = state.apply_string(&[
                    (OpKind::Annihilate, j, Spin::Up),
                    (OpKind::Create, j, Spin::Down),
                    (OpKind::Annihilate, i, Spin::Down),
                    (OpKind::Create, i, Spin::Up),
                ]) {
                    let row = basis.index_of(&image).expect("S² conserves the sector");
                    m.add(row, k, 0.5 * amp);
                }
                if let Some((image, amp)) = state.apply_string(&[
                    (OpKind::Annihilate, j, Spin::Down),
                    (OpKind::Create, j, Spin::Up),
                    (OpKind::Annihilate, i, Spin::Up),
                    (OpKind::Create, i, Spin::Down),
                ]) {
                    let row = basis.index_of(&image).expect("S² conserves the sector");
                    m.add(row, k, 0.5 * amp);
                }
            }
        }
    }
    m
}

/// Classifies a normalized vector by total spin.
///
/// Applies S² and tests the eigenvector residual against
/// [`SPIN_TOLERANCE`]; on success returns S read off from S(S+1) together
/// with the sector S_z, otherwise [`SpinLabel::Mixed`].
pub fn total_spin_label(basis: &Basis, vector: &[f64]) -> Result<SpinLabel> {
    if vector.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: vector.len() });
    }
    let two_sz = basis.sector().n_up as i32 - basis.sector().n_down as i32;
    if basis.sector().statistics == Statistics::Boson {
        return Ok(SpinLabel::Definite { two_s: 0, two_sz: 0 });
    }
    let s2 = s_squared_matrix(basis);
    let image = s2.apply(vector);
    let lambda: f64 = vector.iter().zip(&image).map(|(a, b)| a * b).sum();
    let residual = image
        .iter()
        .zip(vector)
        .map(|(w, v)| (w - lambda * v).abs())
        .fold(0.0f64, f64::max);
    if residual > SPIN_TOLERANCE {
        return Ok(SpinLabel::Mixed);
    }
    // lambda = S(S+1) with 2S a nonnegative integer of the parity of 2Sz
    let two_s = ((4.0 * lambda + 1.0).sqrt() - 1.0).round();
    if two_s < 0.0 {
        return Ok(SpinLabel::Mixed);
    }
    let two_s = two_s as i64;
    let reconstructed = (two_s as f64 / 2.0) * (two_s as f64 / 2.0 + 1.0);
    if (reconstructed - lambda).abs() > SPIN_TOLERANCE || (two_s - two_sz as i64) % 2 != 0 {
        return Ok(SpinLabel::Mixed);
    }
    Ok(SpinLabel::Definite { two_s: two_s as u32, two_sz })
}
