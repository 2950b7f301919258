//! Two-photon quadrature algebra on (a₁, a₂) pairs.
//!
//! Quantum fields appear only as real 2×2 frequency-domain transfer matrices
//! acting on quadrature pairs, plus PSD quadratic forms; the commutation
//! relations reduce to the symplectic condition MᵀJM = J. Vacuum inputs are
//! white with unit one-sided PSD per quadrature.
//!
//! Convention: the homodyne readout mixes both output quadratures,
//! b₁cos η + b₂sin η; any combination involving only b₁ is degenerate and
//! cannot reproduce the η-dependent spectral densities.

use crate::beam::{gouy_phase, BeamParams};
use crate::error::{Error, Result};
use crate::hg::ModeIndex;

/// A quadrature pair of one mode, referred to the plane `reference_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureVector {
    pub a1: f64,
    pub a2: f64,
    pub mode: ModeIndex,
    pub reference_z: f64,
}

/// Real 2×2 input-output relation on a quadrature pair, with the coupling of
/// an external signal (normalized to the relevant SQL) into each quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonTransfer {
    pub matrix: [[f64; 2]; 2],
    pub signal_gain: [f64; 2],
    pub label: String,
}

impl TwoPhotonTransfer {
    /// Identity relation with no signal coupling.
    pub fn identity() -> Self {
        Self {
            matrix: [[1.0, 0.0], [0.0, 1.0]],
            signal_gain: [0.0, 0.0],
            label: "identity".into(),
        }
    }

    /// Rotation of the quadrature pair by `angle`; no signal coupling.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            matrix: [[c, s], [-s, c]],
            signal_gain: [0.0, 0.0],
            label: format!("rotation({angle})"),
        }
    }

    /// `self` applied after `first`: matrix product plus propagated signal.
    pub fn after(&self, first: &Self) -> Self {
        let a = &self.matrix;
        let b = &first.matrix;
        let mut matrix = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                matrix[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        let signal_gain = [
            a[0][0] * first.signal_gain[0] + a[0][1] * first.signal_gain[1] + self.signal_gain[0],
            a[1][0] * first.signal_gain[0] + a[1][1] * first.signal_gain[1] + self.signal_gain[1],
        ];
        Self {
            matrix,
            signal_gain,
            label: format!("{} . {}", self.label, first.label),
        }
    }

    /// Max-abs deviation of MᵀJM from J, with J = [[0,1],[−1,0]].
    ///
    /// For a 2×2 real matrix this reduces to |det M − 1|.
    pub fn symplectic_deviation(&self) -> f64 {
        let m = &self.matrix;
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        (det - 1.0).abs()
    }
}

/// One-sided PSD matrix of a quadrature pair; vacuum is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdMatrix {
    pub s11: f64,
    pub s12: f64,
    pub s21: f64,
    pub s22: f64,
}

impl PsdMatrix {
    pub fn vacuum() -> Self {
        Self {
            s11: 1.0,
            s12: 0.0,
            s21: 0.0,
            s22: 1.0,
        }
    }
}

/// Rotates a quadrature pair to the frame referred to `new_z`.
///
/// The rotation angle is n·(ζ(new_z) − ζ(reference_z)) with n = l + m; the
/// fundamental mode is unaffected.
pub fn gouy_rotate(q: &QuadratureVector, beam: &BeamParams, new_z: f64) -> QuadratureVector {
    let n = q.mode.order() as f64;
    let angle = n * (gouy_phase(beam, new_z) - gouy_phase(beam, q.reference_z));
    let (s, c) = angle.sin_cos();
    QuadratureVector {
        a1: c * q.a1 + s * q.a2,
        a2: -s * q.a1 + c * q.a2,
        mode: q.mode,
        reference_z: new_z,
    }
}

/// Ponderomotive shear: b₁ = a₁, b₂ = −κa₁ + a₂ + √(2κ)·(signal/SQL).
pub fn ponderomotive(kappa: f64) -> TwoPhotonTransfer {
    TwoPhotonTransfer {
        matrix: [[1.0, 0.0], [-kappa, 1.0]],
        signal_gain: [0.0, (2.0 * kappa).sqrt()],
        label: format!("ponderomotive({kappa})"),
    }
}

/// Homodyne readout at `angle` η: projects onto v = (cos η, sin η).
///
/// Returns the noise-gain row vᵀM and the scalar signal gain vᵀs. Angles 0
/// and π read the a₁ quadrature, which carries no signal.
pub fn homodyne_readout(t: &TwoPhotonTransfer, angle: f64) -> Result<([f64; 2], f64)> {
    if !(angle > 0.0 && angle < std::f64::consts::PI) {
        return Err(Error::DegenerateReadout(angle));
    }
    let (s, c) = angle.sin_cos();
    let m = &t.matrix;
    let noise_gain = [c * m[0][0] + s * m[1][0], c * m[0][1] + s * m[1][1]];
    let signal_gain = c * t.signal_gain[0] + s * t.signal_gain[1];
    Ok((noise_gain, signal_gain))
}

/// Output PSD vᵀSv of the readout combination; |v|² for vacuum input.
pub fn output_noise_psd(noise_gain: [f64; 2], input: &PsdMatrix) -> f64 {
    let [v1, v2] = noise_gain;
    v1 * v1 * input.s11 + v1 * v2 * (input.s12 + input.s21) + v2 * v2 * input.s22
}
