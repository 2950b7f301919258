//! Physical constants used throughout the crate (SI units).
//!
//! Single source of truth: every module pulls `c` and `ħ` from here so that
//! derived quantities (κ₀, κ₁, θ_SQL, ...) are reproducible bit for bit.

/// Speed of light in vacuum, m/s. Exact by SI definition.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant ħ, J·s. CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Converts a frequency in Hz to an angular frequency Ω = 2πf in rad/s.
#[inline]
pub fn angular_frequency(f_hz: f64) -> f64 {
    2.0 * std::f64::consts::PI * f_hz
}
