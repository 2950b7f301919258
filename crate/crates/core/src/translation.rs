//! Translational benchmark channel: radiation-pressure coupling κ₀, the
//! displacement SQL, and the homodyne noise spectral density S_z,η.

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::quadrature::{homodyne_readout, output_noise_psd, ponderomotive, PsdMatrix};

/// Laser power, carrier frequency, and mirror mass of the translational
/// measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationSetup {
    laser_power: f64,
    carrier_angular_frequency: f64,
    mirror_mass: f64,
}

impl TranslationSetup {
    pub fn new(laser_power: f64, carrier_angular_frequency: f64, mirror_mass: f64) -> Result<Self> {
        for (name, v) in [
            ("laser_power", laser_power),
            ("carrier_angular_frequency", carrier_angular_frequency),
            ("mirror_mass", mirror_mass),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            laser_power,
            carrier_angular_frequency,
            mirror_mass,
        })
    }

    pub fn laser_power(&self) -> f64 {
        self.laser_power
    }

    pub fn carrier_angular_frequency(&self) -> f64 {
        self.carrier_angular_frequency
    }

    pub fn mirror_mass(&self) -> f64 {
        self.mirror_mass
    }

    /// Carrier amplitude A = √(2I₀/ħω₀).
    pub fn carrier_amplitude(&self) -> f64 {
        (2.0 * self.laser_power / (HBAR * self.carrier_angular_frequency)).sqrt()
    }
}

fn require_positive_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "omega must be positive and finite, got {omega}"
        )));
    }
    Ok(())
}

/// Radiation-pressure coupling κ₀ = 8I₀ω₀/(mc²Ω²).
pub fn kappa0(setup: &TranslationSetup, omega: f64) -> Result<f64> {
    require_positive_omega(omega)?;
    Ok(8.0 * setup.laser_power * setup.carrier_angular_frequency
        / (setup.mirror_mass * SPEED_OF_LIGHT * SPEED_OF_LIGHT * omega * omega))
}

/// Displacement SQL z_SQL = √(2ħ/(mΩ²)), m/√Hz.
pub fn z_sql(setup: &TranslationSetup, omega: f64) -> Result<f64> {
    require_positive_omega(omega)?;
    Ok((2.0 * HBAR / (setup.mirror_mass * omega * omega)).sqrt())
}

/// Closed-form S_z,η split into (total, sensing, backaction), given κ₀, the
/// homodyne angle, and the SQL amplitude. Total is the exact sum of the two
/// components.
pub fn noise_psd_from_kappa(kappa: f64, eta: f64, sql: f64) -> Result<(f64, f64, f64)> {
    if !(eta > 0.0 && eta < std::f64::consts::PI) {
        return Err(Error::DegenerateReadout(eta));
    }
    let cot = eta.cos() / eta.sin();
    let scale = sql * sql / (2.0 * kappa);
    let backaction_gain = -kappa + cot;
    let sensing = scale;
    let backaction = scale * backaction_gain * backaction_gain;
    Ok((sensing + backaction, sensing, backaction))
}

/// Homodyne noise spectral density S_z,η(Ω) in m²/Hz, computed through the
/// composed quadrature pipeline: ponderomotive(κ₀) → homodyne readout →
/// vacuum PSD, divided by the squared signal gain.
pub fn translation_noise_psd(setup: &TranslationSetup, omega: f64, eta: f64) -> Result<f64> {
    let kappa = kappa0(setup, omega)?;
    let sql = z_sql(setup, omega)?;
    let transfer = ponderomotive(kappa);
    let (noise_gain, signal_gain) = homodyne_readout(&transfer, eta)?;
    let quad_psd = output_noise_psd(noise_gain, &PsdMatrix::vacuum());
    Ok(quad_psd * sql * sql / (signal_gain * signal_gain))
}
