//! Spectra of the double-well models: closed-form singlet/triplet energies,
//! the singlet-triplet transition point, dynamic evolution frequencies, and
//! the inversion of measured frequencies back to couplings.
//!
//! All closed forms are in units of J and take the dimensionless ratios
//! (U/4J, V/4J, J_ex/4J). The frequency map works in raw energy units with an
//! explicit hbar so it runs in natural or physical units alike.

use crate::eigen::jacobi_eigen;
use crate::error::{Error, Result};
use crate::fock::{total_spin_label, SpinLabel};
use crate::model::{to_dimensionless, CouplingSet, DimensionlessCouplings, HamiltonianMatrix};

/// Bisection tolerance for the transition point.
pub const TRANSITION_TOLERANCE: f64 = 1e-12;

/// Relative residual above which a frequency set is rejected as inconsistent.
pub const FREQUENCY_RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Full spectrum of a sector Hamiltonian.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Eigenvalues ascending, in the units of the input matrix.
    pub eigenvalues: Vec<f64>,
    /// Normalized ground-state vector in the attached basis.
    pub ground_vector: Vec<f64>,
    /// Total-spin label of the ground vector (Mixed on degeneracies).
    pub ground_spin: SpinLabel,
}

/// Diagonalizes a sector Hamiltonian and labels the ground state spin.
pub fn eigen_symmetric(h: &HamiltonianMatrix) -> Result<SpectrumResult> {
    let eig = jacobi_eigen(h.matrix())?;
    let ground_vector = eig.vectors[0].clone();
    let ground_spin = total_spin_label(h.basis(), &ground_vector)?;
    Ok(SpectrumResult { eigenvalues: eig.values, ground_vector, ground_spin })
}

/// Ground-state energy of the singlet branch, units of J:
/// E_s = -2 [ sqrt((u - v - j)² + 1) - (u + v + j) ].
pub fn singlet_energy(dc: &DimensionlessCouplings) -> f64 {
    let w = dc.u - dc.v - dc.j;
    -2.0 * ((w * w + 1.0).sqrt() - (dc.u + dc.v + dc.j))
}

/// Triplet energy, units of J: E_t = 4 (v - j). Shared by both polarized
/// sectors ("double fold degenerate") and the S_z = 0 triplet combination.
pub fn triplet_energy(dc: &DimensionlessCouplings) -> f64 {
    4.0 * (dc.v - dc.j)
}

/// Smallest j >= 0 with E_t <= E_s, located by bisection on
/// E_s(u,v,j) - E_t(v,j) to [`TRANSITION_TOLERANCE`].
///
/// The difference is strictly increasing in j (E_s nondecreasing, E_t
/// strictly decreasing), so the crossing is unique.
pub fn transition_point(u: f64, v: f64) -> Result<f64> {
    let gap = |j: f64| {
        let dc = DimensionlessCouplings::new(u, v, j);
        singlet_energy(&dc) - triplet_energy(&dc)
    };
    if gap(0.0) >= 0.0 {
        // E_s >= E_t already at j = 0: cannot happen for finite (u, v) since
        // E_t - E_s = 2[sqrt((u-v)²+1) - (u-v)] > 0, but guard anyway
        if gap(0.0) == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::NoCrossing);
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while gap(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Domain(format!(
                "no singlet-triplet crossing found below j = {hi}"
            )));
        }
    }
    while hi - lo > TRANSITION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Closed form of the crossing derived from E_s = E_t:
/// j_crit = [ sqrt((u - v)² + 1/2) - (u - v) ] / 2.
pub fn transition_point_closed_form(u: f64, v: f64) -> f64 {
    let s = u - v;
    0.5 * ((s * s + 0.5).sqrt() - s)
}

/// The transition-point expression with the radical closing before the 1/2
/// term, i.e. [ |u - v| + 1/2 - (u + v) ] / 2. Kept as a diagnostic only: it
/// does not solve E_s = E_t (see [`transition_point_closed_form`]).
pub fn transition_point_printed_form(u: f64, v: f64) -> f64 {
    0.5 * ((u - v).abs() + 0.5 - (u + v))
}

/// Dynamic evolution frequencies, rad/s (for the given hbar).
///
/// w1 >= w2 >= 0 and w3 >= w4 by construction; w4 turns negative when
/// 4u(v + j) > 1 and w5 = (V - J_ex)/hbar is negative whenever J_ex > V.
/// Signed values are kept so the inverse map stays exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencySet {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
    pub w5: f64,
    pub hbar: f64,
}

impl FrequencySet {
    pub fn new(w1: f64, w2: f64, w3: f64, w4: f64, w5: f64, hbar: f64) -> Result<Self> {
        if hbar.is_nan() || hbar <= 0.0 {
            return Err(Error::Domain(format!("hbar must be > 0, got {hbar}")));
        }
        if w1.is_nan() || w2.is_nan() || w1 < w2 || w2 < 0.0 {
            return Err(Error::Domain(format!("frequency ordering requires w1 >= w2 >= 0, got w1={w1}, w2={w2}")));
        }
        if w3.is_nan() || w4.is_nan() || w3 < w4 {
            return Err(Error::Domain(format!("frequency ordering requires w3 >= w4, got w3={w3}, w4={w4}")));
        }
        Ok(Self { w1, w2, w3, w4, w5, hbar })
    }

    /// True when w5 is negative (J_ex exceeds V); the value is reported
    /// signed rather than clamped.
    pub fn has_negative_w5(&self) -> bool {
        self.w5 < 0.0
    }
}

/// Evolution frequencies of a coupling set:
/// hbar w_{1,2} = (sqrt(16J² + U²) ± U)/2,
/// hbar w_{3,4} = 2J [ sqrt((u-v-j)² + 1) ± (u+v+j) ],
/// hbar w_5 = V - J_ex.
pub fn evolution_frequencies(c: &CouplingSet, hbar: f64) -> Result<FrequencySet> {
    if c.hop_j <= 0.0 {
        return Err(Error::ZeroHopping);
    }
    if hbar.is_nan() || hbar <= 0.0 {
        return Err(Error::Domain(format!("hbar must be > 0, got {hbar}")));
    }
    let dc = to_dimensionless(c)?;
    let j = c.hop_j;
    let u_energy = c.onsite_u;
    let root_hubbard = (16.0 * j * j + u_energy * u_energy).sqrt();
    let root_juvj = ((dc.u - dc.v - dc.j) * (dc.u - dc.v - dc.j) + 1.0).sqrt();
    let sum = dc.u + dc.v + dc.j;
    FrequencySet::new(
        (root_hubbard + u_energy) / (2.0 * hbar),
        (root_hubbard - u_energy) / (2.0 * hbar),
        2.0 * j * (root_juvj + sum) / hbar,
        2.0 * j * (root_juvj - sum) / hbar,
        (c.intersite_v - c.superexchange_jex) / hbar,
        hbar,
    )
}

/// Couplings recovered from a frequency set plus the consistency residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingExtraction {
    pub couplings: CouplingSet,
    /// | hbar(w3 + w4) - 4J sqrt((u-v-j)² + 1) | evaluated at the recovered
    /// couplings.
    pub residual: f64,
    /// Residual relative to max(1, |hbar (w3 + w4)|).
    pub relative_residual: f64,
}

/// Inverts the frequency map:
/// J = hbar sqrt(w1 w2)/2, U = hbar(w1 - w2),
/// V = (hbar(w3 - w4) - U + hbar w5)/2, J_ex = (hbar(w3 - w4) - U - hbar w5)/2.
///
/// V and J_ex come from the exact difference hbar(w3 - w4) = U + V + J_ex;
/// the sum w3 + w4 is then a redundant consistency check and gates the
/// result at [`FREQUENCY_RESIDUAL_TOLERANCE`].
pub fn extract_couplings(f: &FrequencySet) -> Result<CouplingExtraction> {
    if f.w1 < f.w2 {
        return Err(Error::Domain(format!(
            "frequency ordering requires w1 >= w2, got w1={}, w2={}",
            f.w1, f.w2
        )));
    }
    let hbar = f.hbar;
    let hop_j = 0.5 * hbar * (f.w1 * f.w2).sqrt();
    let onsite_u = hbar * (f.w1 - f.w2);
    let diff34 = hbar * (f.w3 - f.w4);
    let w5_energy = hbar * f.w5;
    let intersite_v = 0.5 * (diff34 - onsite_u + w5_energy);
    let superexchange_jex = 0.5 * (diff34 - onsite_u - w5_energy);
    let couplings = CouplingSet {
        hop_j,
        onsite_u,
        intersite_v,
        superexchange_jex,
        bias_delta: 0.0,
    };
    let residual = if hop_j > 0.0 {
        let dc = to_dimensionless(&couplings)?;
        let w = dc.u - dc.v - dc.j;
        (hbar * (f.w3 + f.w4) - 4.0 * hop_j * (w * w + 1.0).sqrt()).abs()
    } else {
        (hbar * (f.w3 + f.w4)).abs()
    };
    let relative_residual = residual / (hbar * (f.w3 + f.w4)).abs().max(1.0);
    if relative_residual > FREQUENCY_RESIDUAL_TOLERANCE {
        return Err(Error::InconsistentFrequencies {
            residual: relative_residual,
            tolerance: FREQUENCY_RESIDUAL_TOLERANCE,
        });
    }
    Ok(CouplingExtraction { couplings, residual, relative_residual })
}
