//! Trap-level quantities of the optical superlattice: dipole potential,
//! detuning regime, superlattice potential profile, Josephson frequency,
//! recoil energy, and species statistics.
//!
//! Lattice depths are stored in recoil-energy units and converted to absolute
//! energy only where a formula needs it (the Josephson frequency). All
//! functions take an explicit [`PhysicalConstants`] so the same code runs in
//! natural units (hbar = epsilon_0 = c = 1) and in SI.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::fock::Statistics;

/// A laser field acting on one atomic transition.
///
/// The field and dipole amplitudes enter only through the intensity and the
/// real part of the polarizability, so those are what is stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleField {
    /// Field intensity, power per area.
    pub intensity: f64,
    /// Re(alpha), volume-scaled polarizability at the driving frequency.
    pub polarizability_re: f64,
    /// Driving (laser) angular frequency, rad/s.
    pub laser_frequency: f64,
    /// Atomic transition angular frequency, rad/s.
    pub transition_frequency: f64,
}

impl DipoleField {
    pub fn new(
        intensity: f64,
        polarizability_re: f64,
        laser_frequency: f64,
        transition_frequency: f64,
    ) -> Result<Self> {
        if intensity.is_nan() || intensity < 0.0 {
            return Err(Error::Domain(format!("intensity must be >= 0, got {intensity}")));
        }
        if laser_frequency.is_nan()
            || transition_frequency.is_nan()
            || laser_frequency <= 0.0
            || transition_frequency <= 0.0
        {
            return Err(Error::Domain(
                "laser_frequency and transition_frequency must be > 0".into(),
            ));
        }
        if !polarizability_re.is_finite() {
            return Err(Error::Domain("polarizability_re must be finite".into()));
        }
        Ok(Self { intensity, polarizability_re, laser_frequency, transition_frequency })
    }
}

/// Superlattice geometry and depths.
///
/// `v1` and `v2` are the long- and short-lattice depths in recoil-energy
/// units; `d` is the long-lattice period. A nonzero `phase` between the two
/// standing waves tilts the double well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    pub v1: f64,
    pub v2: f64,
    pub d: f64,
    pub phase: f64,
    pub mass: f64,
    pub wavelength: f64,
}

impl LatticeParams {
    pub fn new(v1: f64, v2: f64, d: f64, phase: f64, mass: f64, wavelength: f64) -> Result<Self> {
        if v1.is_nan() || v2.is_nan() || v1 < 0.0 || v2 < 0.0 {
            return Err(Error::Domain(format!("depths must be >= 0, got v1={v1}, v2={v2}")));
        }
        if [d, mass, wavelength].iter().any(|x| x.is_nan() || *x <= 0.0) {
            return Err(Error::Domain(
                "period, mass and wavelength must all be > 0".into(),
            ));
        }
        if !phase.is_finite() {
            return Err(Error::Domain("phase must be finite".into()));
        }
        Ok(Self { v1, v2, d, phase, mass, wavelength })
    }
}

/// Sign of the detuning between laser and transition frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detuning {
    /// Laser below the transition; atoms are attracted to intensity maxima.
    Red,
    /// Laser above the transition; atoms are attracted to intensity minima.
    Blue,
    /// Zero detuning; outside the validity of the trap model.
    Resonant,
}

/// Constituent counts of a neutral atomic isotope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Species {
    pub protons: u32,
    pub neutrons: u32,
    pub electrons: u32,
}

impl Species {
    pub fn new(protons: u32, neutrons: u32, electrons: u32) -> Result<Self> {
        if protons < 1 || electrons < 1 {
            return Err(Error::Domain("an atom has at least one proton and one electron".into()));
        }
        if protons != electrons {
            return Err(Error::Domain(format!(
                "neutral atom requires protons = electrons, got {protons} vs {electrons}"
            )));
        }
        Ok(Self { protons, neutrons, electrons })
    }

    /// Neutral isotope with `protons` electrons.
    pub fn neutral(protons: u32, neutrons: u32) -> Result<Self> {
        Self::new(protons, neutrons, protons)
    }
}

/// Interaction energy of the induced dipole with the driving field:
/// -Re(alpha) I / (2 epsilon_0 c). Negative for Re(alpha) > 0, i.e. the atom
/// is pulled toward intensity maxima.
pub fn dipole_potential(field: &DipoleField, constants: &PhysicalConstants) -> f64 {
    -field.polarizability_re * field.intensity / (2.0 * constants.epsilon_0 * constants.c)
}

/// Classifies the detuning of the field: laser minus transition frequency.
pub fn detuning_class(field: &DipoleField) -> Detuning {
    let detuning = field.laser_frequency - field.transition_frequency;
    if detuning < 0.0 {
        Detuning::Red
    } else if detuning > 0.0 {
        Detuning::Blue
    } else {
        Detuning::Resonant
    }
}

/// Superlattice potential in recoil units:
/// V(x) = v1 cos²(pi x / d + phase) + v2 cos²(2 pi x / d).
///
/// The long lattice has period d, the short lattice period d/2; phase = 0
/// gives the symmetric double well, nonzero phase tilts it.
pub fn superlattice_potential(x: f64, p: &LatticeParams) -> f64 {
    let long = (std::f64::consts::PI * x / p.d + p.phase).cos();
    let short = (2.0 * std::f64::consts::PI * x / p.d).cos();
    p.v1 * long * long + p.v2 * short * short
}

/// Recoil energy of the short lattice, hbar² / (2 m lambda²).
///
/// Note the lambda-based form: the k = 2 pi / lambda wavenumber convention
/// hbar² k² / (2 m) is (2 pi)² times larger.
pub fn recoil_energy(mass: f64, wavelength: f64, constants: &PhysicalConstants) -> f64 {
    constants.hbar * constants.hbar / (2.0 * mass * wavelength * wavelength)
}

/// Josephson oscillation frequency of an atom in one well at half filling:
/// omega = (pi/d) sqrt((16 V2² - V1²) / (2 m V2)), with the depths converted
/// from recoil units to absolute energy.
///
/// Defined only for v2 > 0 and 16 v2² >= v1²; outside that the radicand is
/// negative and a [`Error::Domain`] is returned rather than a complex value.
pub fn josephson_frequency(p: &LatticeParams, constants: &PhysicalConstants) -> Result<f64> {
    if p.v2 <= 0.0 {
        return Err(Error::Domain("josephson frequency requires v2 > 0".into()));
    }
    let er = recoil_energy(p.mass, p.wavelength, constants);
    let v1 = p.v1 * er;
    let v2 = p.v2 * er;
    let radicand = (16.0 * v2 * v2 - v1 * v1) / (2.0 * p.mass * v2);
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "16 v2² < v1² (v1 = {}, v2 = {} recoil units): frequency would be imaginary",
            p.v1, p.v2
        )));
    }
    Ok(std::f64::consts::PI / p.d * radicand.sqrt())
}

/// Effective double-well criterion: v1 > 4 v2 (strict).
pub fn is_effective_double_well(p: &LatticeParams) -> bool {
    p.v1 > 4.0 * p.v2
}

/// Bosons have an even total constituent count (integer total spin),
/// fermions an odd one.
pub fn classify_species(s: &Species) -> Statistics {
    if (s.protons + s.neutrons + s.electrons).is_multiple_of(2) {
        Statistics::Boson
    } else {
        Statistics::Fermion
    }
}
