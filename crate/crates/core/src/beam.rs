//! Geometry of a fundamental Gaussian beam.
//!
//! All positions `z` are measured from the beam waist of the beam under
//! discussion; callers handle frame flips between incident and reflected
//! beams. Everything here is a pure function of an immutable [`BeamParams`].

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};

/// Carrier wavelength and waist radius, with the derived geometric scales.
///
/// * wavenumber k₀ = 2π/λ
/// * carrier angular frequency ω₀ = c·k₀
/// * Rayleigh range z₀ = k₀w₀²/2
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParams {
    wavelength: f64,
    waist_radius: f64,
}

impl BeamParams {
    /// Builds beam parameters from wavelength and waist radius (both m).
    ///
    /// Logs a warning when w₀ < 10λ, where the paraxial approximation starts
    /// to degrade; the constructor still succeeds.
    pub fn new(wavelength: f64, waist_radius: f64) -> Result<Self> {
        if !(wavelength > 0.0) || !wavelength.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "wavelength must be positive and finite, got {wavelength}"
            )));
        }
        if !(waist_radius > 0.0) || !waist_radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "waist radius must be positive and finite, got {waist_radius}"
            )));
        }
        if waist_radius < 10.0 * wavelength {
            log::warn!(
                "waist radius {waist_radius} m < 10 wavelengths ({wavelength} m); \
                 paraxial approximation is marginal"
            );
        }
        Ok(Self {
            wavelength,
            waist_radius,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Waist radius w₀ (m).
    pub fn waist_radius(&self) -> f64 {
        self.waist_radius
    }

    /// Wavenumber k₀ = 2π/λ (1/m).
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength
    }

    /// Carrier angular frequency ω₀ = c·k₀ (rad/s).
    pub fn carrier_angular_frequency(&self) -> f64 {
        SPEED_OF_LIGHT * self.wavenumber()
    }

    /// Rayleigh range z₀ = k₀w₀²/2 (m).
    pub fn rayleigh_range(&self) -> f64 {
        self.wavenumber() * self.waist_radius * self.waist_radius / 2.0
    }
}

/// Gouy phase ζ(z) = arctan(z/z₀), in (−π/2, π/2).
pub fn gouy_phase(beam: &BeamParams, z: f64) -> f64 {
    (z / beam.rayleigh_range()).atan()
}

/// Beam width w(z) = w₀·√(1 + z²/z₀²).
pub fn beam_width(beam: &BeamParams, z: f64) -> f64 {
    let z0 = beam.rayleigh_range();
    beam.waist_radius() * (1.0 + (z / z0) * (z / z0)).sqrt()
}

/// Wavefront curvature 1/R(z) = z/(z² + z₀²).
///
/// Regular everywhere; the waist has a flat wavefront, curvature 0.
pub fn curvature(beam: &BeamParams, z: f64) -> f64 {
    let z0 = beam.rayleigh_range();
    z / (z * z + z0 * z0)
}

/// Radius of curvature R(z) = z + z₀²/z.
///
/// Singular at the waist; returns [`Error::SingularCurvature`] at z = 0.
pub fn radius_of_curvature(beam: &BeamParams, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Err(Error::SingularCurvature);
    }
    Ok(1.0 / curvature(beam, z))
}

/// Local divergence angle α(z) = 2/(k₀w(z)); α₀ = α(0) = 2/(k₀w₀).
///
/// Satisfies α(z)·w(z) = 2/k₀ exactly, and w₀/α₀ = z₀.
pub fn divergence(beam: &BeamParams, z: f64) -> f64 {
    2.0 / (beam.wavenumber() * beam_width(beam, z))
}
