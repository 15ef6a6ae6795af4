//! Physical constants and the natural/physical unit toggle.

/// Reduced Planck constant, J s (CODATA 2018; derived from the exact h).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity, F/m (CODATA 2018).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// The constants entering trap-level formulas.
///
/// Natural mode sets hbar = epsilon_0 = c = 1 so formulas can be exercised
/// with order-one inputs; physical mode uses the CODATA values above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub epsilon_0: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const fn natural() -> Self {
        Self { hbar: 1.0, epsilon_0: 1.0, c: 1.0 }
    }

    pub const fn codata() -> Self {
        Self { hbar: HBAR, epsilon_0: EPSILON_0, c: SPEED_OF_LIGHT }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}
