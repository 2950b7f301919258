//! Angular channel of the optical lever: radiation-torque coupling κ₁, the
//! angular SQL, the b¹⁰ input-output relation, and the noise spectral
//! density S_θ,ψ with its sensing/backaction split.
//!
//! Frame bookkeeping: all positions are reflected-beam coordinates with the
//! waist at z = 0; incident-frame quantities map via Z ↦ −Z at the mirror.
//! The mirror curvature is assumed matched to the beam curvature at Z₁.

use crate::beam::{beam_width, divergence, gouy_phase, BeamParams};
use crate::constants::{angular_frequency, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::quadrature::{output_noise_psd, ponderomotive, PsdMatrix, TwoPhotonTransfer};

/// Beam, laser power, mirror inertia, and mirror position; everything the
/// angular channel needs except the detector position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorSetup {
    beam: BeamParams,
    laser_power: f64,
    mirror_inertia: f64,
    mirror_mass: Option<f64>,
    mirror_z: f64,
}

impl MirrorSetup {
    pub fn new(
        beam: BeamParams,
        laser_power: f64,
        mirror_inertia: f64,
        mirror_mass: Option<f64>,
        mirror_z: f64,
    ) -> Result<Self> {
        for (name, v) in [("laser_power", laser_power), ("mirror_inertia", mirror_inertia)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if let Some(m) = mirror_mass {
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "mirror_mass must be positive and finite, got {m}"
                )));
            }
        }
        if !mirror_z.is_finite() {
            return Err(Error::InvalidParameter("mirror_z must be finite".into()));
        }
        Ok(Self {
            beam,
            laser_power,
            mirror_inertia,
            mirror_mass,
            mirror_z,
        })
    }

    pub fn beam(&self) -> &BeamParams {
        &self.beam
    }

    pub fn laser_power(&self) -> f64 {
        self.laser_power
    }

    pub fn mirror_inertia(&self) -> f64 {
        self.mirror_inertia
    }

    pub fn mirror_mass(&self) -> Option<f64> {
        self.mirror_mass
    }

    /// Signed mirror position Z₁ in the reflected-beam frame.
    pub fn mirror_z(&self) -> f64 {
        self.mirror_z
    }

    /// Carrier amplitude A = √(2I₀/ħω₀).
    pub fn carrier_amplitude(&self) -> f64 {
        (2.0 * self.laser_power / (HBAR * self.beam.carrier_angular_frequency())).sqrt()
    }
}

/// Full optical-lever measurement: mirror setup plus detector position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeverConfig {
    setup: MirrorSetup,
    detect_z: f64,
}

impl LeverConfig {
    /// Requires detection downstream of the mirror, so ψ ∈ (0, π).
    pub fn new(setup: MirrorSetup, detect_z: f64) -> Result<Self> {
        if !detect_z.is_finite() || detect_z <= setup.mirror_z {
            return Err(Error::InvalidParameter(format!(
                "detect_z ({detect_z}) must be finite and downstream of mirror_z ({})",
                setup.mirror_z
            )));
        }
        Ok(Self { setup, detect_z })
    }

    pub fn setup(&self) -> &MirrorSetup {
        &self.setup
    }

    pub fn detect_z(&self) -> f64 {
        self.detect_z
    }

    /// Stable text fingerprint of all config fields (FNV-1a over the exact
    /// bit patterns), used to tag emitted spectra.
    pub fn fingerprint(&self) -> String {
        let mut hash: u64 = 0xcbf29ce484222325;
        let mut eat = |v: f64| {
            for byte in v.to_bits().to_le_bytes() {
                hash ^= byte as u64;
                hash = hash.wrapping_mul(0x100000001b3);
            }
        };
        eat(self.setup.beam.wavelength());
        eat(self.setup.beam.waist_radius());
        eat(self.setup.laser_power);
        eat(self.setup.mirror_inertia);
        eat(self.setup.mirror_mass.unwrap_or(0.0));
        eat(self.setup.mirror_z);
        eat(self.detect_z);
        format!("{hash:016x}")
    }
}

/// Frequency grid with the per-channel one-sided PSDs of the angular
/// measurement, all in rad²/Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpectrum {
    pub frequencies_hz: Vec<f64>,
    pub total: Vec<f64>,
    pub sensing: Vec<f64>,
    pub backaction: Vec<f64>,
    pub sql: Vec<f64>,
    pub config_fingerprint: String,
}

/// Grid spacing for [`budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Log,
    Linear,
}

/// Gouy separation ψ = ζ(Z_meas) − ζ(Z₁) ∈ (0, π).
pub fn gouy_separation(config: &LeverConfig) -> f64 {
    gouy_phase(config.setup.beam(), config.detect_z)
        - gouy_phase(config.setup.beam(), config.setup.mirror_z)
}

fn require_positive_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "omega must be positive and finite, got {omega}"
        )));
    }
    Ok(())
}

/// Radiation-torque coupling κ₁ = 4I₀w(Z₁)/(IcΩ²α(Z₁)).
///
/// Equal to the simplified form 2I₀ω₀w(Z₁)²/(Ic²Ω²) through α = 2/(k w).
pub fn kappa1(setup: &MirrorSetup, omega: f64) -> Result<f64> {
    require_positive_omega(omega)?;
    let w = beam_width(setup.beam(), setup.mirror_z);
    let alpha = divergence(setup.beam(), setup.mirror_z);
    Ok(4.0 * setup.laser_power * w
        / (setup.mirror_inertia * SPEED_OF_LIGHT * omega * omega * alpha))
}

/// Angular SQL θ_SQL = √(2ħ/(IΩ²)), rad/√Hz.
pub fn theta_sql(inertia: f64, omega: f64) -> Result<f64> {
    require_positive_omega(omega)?;
    if !(inertia > 0.0) || !inertia.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "inertia must be positive and finite, got {inertia}"
        )));
    }
    Ok((2.0 * HBAR / (inertia * omega * omega)).sqrt())
}

/// Radiation-torque response ħω₀A·w(Z₁)/(cIΩ²): mirror angle per unit a₁
/// quadrature of the incident 10-mode vacuum.
pub fn torque_response(setup: &MirrorSetup, omega: f64) -> Result<f64> {
    require_positive_omega(omega)?;
    let omega0 = setup.beam().carrier_angular_frequency();
    let w = beam_width(setup.beam(), setup.mirror_z);
    Ok(HBAR * omega0 * setup.carrier_amplitude() * w
        / (SPEED_OF_LIGHT * setup.mirror_inertia * omega * omega))
}

/// Input-output relation of the 10-mode quadratures at the mirror:
/// b₁ = a₁, b₂ = −κ₁a₁ + a₂ + √(2κ₁)·θ_ex/θ_SQL.
///
/// Inputs are referred to −Z₁ (incident frame), outputs to Z₁ (reflected
/// frame).
pub fn rotation_io(setup: &MirrorSetup, omega: f64) -> Result<TwoPhotonTransfer> {
    let kappa = kappa1(setup, omega)?;
    let mut t = ponderomotive(kappa);
    t.label = format!("rotation_io(kappa1={kappa})");
    Ok(t)
}

/// Closed-form S_θ,ψ split into (total, sensing, backaction) from κ₁, the
/// Gouy separation, and the SQL amplitude. Total is the exact sum.
pub fn noise_psd_from_kappa(kappa: f64, psi: f64, sql: f64) -> Result<(f64, f64, f64)> {
    if !(psi > 0.0 && psi < std::f64::consts::PI) {
        return Err(Error::DegenerateReadout(psi));
    }
    let cot = psi.cos() / psi.sin();
    let scale = sql * sql / (2.0 * kappa);
    let backaction_gain = -kappa + cot;
    let sensing = scale;
    let backaction = scale * backaction_gain * backaction_gain;
    Ok((sensing + backaction, sensing, backaction))
}

/// Noise spectral density of the angular measurement at Ω, as
/// (total, sensing, backaction) in rad²/Hz.
pub fn rotation_noise_psd(config: &LeverConfig, omega: f64) -> Result<(f64, f64, f64)> {
    let kappa = kappa1(config.setup(), omega)?;
    let sql = theta_sql(config.setup().mirror_inertia, omega)?;
    noise_psd_from_kappa(kappa, gouy_separation(config), sql)
}

/// Total noise via the composed quadrature pipeline: rotation_io → Gouy
/// rotation by ψ on the 10 mode → transverse-displacement readout → vacuum
/// PSD, normalized by the squared signal gain.
///
/// Reading the displacement quadrature after a Gouy rotation by ψ is exactly
/// homodyne detection at angle ψ; this path is kept independent of the
/// closed form so the two can be checked against each other.
pub fn rotation_noise_pipeline(config: &LeverConfig, omega: f64) -> Result<f64> {
    let io = rotation_io(config.setup(), omega)?;
    let psi = gouy_separation(config);
    if psi.sin() == 0.0 {
        return Err(Error::DegenerateReadout(psi));
    }
    let propagated = TwoPhotonTransfer::rotation(psi).after(&io);
    // transverse displacement at Z_meas is the first quadrature
    let noise_gain = [propagated.matrix[0][0], propagated.matrix[0][1]];
    let signal_gain = propagated.signal_gain[0];
    let quad_psd = output_noise_psd(noise_gain, &PsdMatrix::vacuum());
    let sql = theta_sql(config.setup().mirror_inertia, omega)?;
    Ok(quad_psd * sql * sql / (signal_gain * signal_gain))
}

/// Evaluates the angular noise budget on a frequency grid.
pub fn budget(
    config: &LeverConfig,
    f_min_hz: f64,
    f_max_hz: f64,
    n_points: usize,
    scale: GridScale,
) -> Result<NoiseSpectrum> {
    let frequencies_hz = frequency_grid(f_min_hz, f_max_hz, n_points, scale)?;
    let mut total = Vec::with_capacity(n_points);
    let mut sensing = Vec::with_capacity(n_points);
    let mut backaction = Vec::with_capacity(n_points);
    let mut sql = Vec::with_capacity(n_points);
    for &f in &frequencies_hz {
        let omega = angular_frequency(f);
        let (t, s, b) = rotation_noise_psd(config, omega)?;
        let th = theta_sql(config.setup().mirror_inertia, omega)?;
        total.push(t);
        sensing.push(s);
        backaction.push(b);
        sql.push(th * th);
    }
    Ok(NoiseSpectrum {
        frequencies_hz,
        total,
        sensing,
        backaction,
        sql,
        config_fingerprint: config.fingerprint(),
    })
}

/// Ascending frequency grid, log- or linearly-spaced, endpoints included.
pub fn frequency_grid(
    f_min_hz: f64,
    f_max_hz: f64,
    n_points: usize,
    scale: GridScale,
) -> Result<Vec<f64>> {
    if !(f_min_hz > 0.0) || !(f_max_hz > f_min_hz) {
        return Err(Error::InvalidGrid(format!(
            "need 0 < f_min < f_max, got [{f_min_hz}, {f_max_hz}]"
        )));
    }
    if n_points < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    let n = n_points as f64;
    Ok((0..n_points)
        .map(|i| {
            let t = i as f64 / (n - 1.0);
            match scale {
                GridScale::Log => f_min_hz * (f_max_hz / f_min_hz).powf(t),
                GridScale::Linear => f_min_hz + t * (f_max_hz - f_min_hz),
            }
        })
        .collect())
}
