//! Hermite-Gaussian modes, overlap quadrature, and the first-order
//! decomposition of a displaced/tilted fundamental beam onto the 10 mode.
//!
//! Sign conventions follow the e^{+iφ} carrier convention and the coordinate
//! rotation used to define tilt: positive δθ rotates the beam axis toward
//! negative x with increasing z.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::beam::{beam_width, curvature, divergence, BeamParams};
use crate::error::{Error, Result};

/// Highest supported combined mode order l + m.
pub const MAX_MODE_ORDER: u32 = 6;

/// Highest supported Hermite polynomial order.
pub const MAX_HERMITE_ORDER: u32 = 12;

/// Transverse mode index (l, m) with l + m ≤ [`MAX_MODE_ORDER`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeIndex {
    l: u32,
    m: u32,
}

impl ModeIndex {
    pub fn new(l: u32, m: u32) -> Result<Self> {
        if l + m > MAX_MODE_ORDER {
            return Err(Error::UnsupportedMode {
                l,
                m,
                max: MAX_MODE_ORDER,
            });
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Combined order n = l + m; the Gouy phase of the mode is (n+1)ζ.
    pub fn order(&self) -> u32 {
        self.l + self.m
    }
}

/// Physicists' Hermite polynomial H_n(x) by the recurrence
/// H_{n+1} = 2xH_n − 2nH_{n−1}.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::UnsupportedHermiteOrder(n, MAX_HERMITE_ORDER));
    }
    let mut h_prev = 1.0; // H_0
    if n == 0 {
        return Ok(h_prev);
    }
    let mut h = 2.0 * x; // H_1
    for k in 1..n {
        let h_next = 2.0 * x * h - 2.0 * (k as f64) * h_prev;
        h_prev = h;
        h = h_next;
    }
    Ok(h)
}

/// Real mode envelope u_lm(x, y, z), units 1/m.
///
/// u_lm = √(2/(πw²)) · (2^l l! 2^m m!)^{−1/2} · e^{−(x²+y²)/w²}
///        · H_l(√2x/w) H_m(√2y/w)
pub fn mode_amplitude(beam: &BeamParams, idx: ModeIndex, x: f64, y: f64, z: f64) -> f64 {
    let w = beam_width(beam, z);
    let norm = (2.0 / (std::f64::consts::PI * w * w)).sqrt()
        / (pow2_factorial(idx.l) * pow2_factorial(idx.m)).sqrt();
    let s = std::f64::consts::SQRT_2 / w;
    norm * (-(x * x + y * y) / (w * w)).exp()
        * hermite(idx.l, s * x).expect("index bound implies valid order")
        * hermite(idx.m, s * y).expect("index bound implies valid order")
}

/// 2^n · n! as a float; n ≤ MAX_MODE_ORDER so this is exact.
fn pow2_factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| 2 * k).product::<u64>() as f64
}

/// Half-width of the overlap quadrature domain, in beam widths.
const QUAD_HALF_WIDTH: f64 = 6.0;
/// Base grid resolution per axis; one refinement step doubles it.
const QUAD_POINTS: usize = 200;
const QUAD_TOL: f64 = 1e-7;

/// Numerical overlap ∫∫ u_a u_b dx dy at plane z; ≈ δ_ab by orthonormality.
///
/// Uniform tensor-product midpoint rule over ±6 w(z), 200 points per axis,
/// with one doubled-resolution pass as a convergence check.
pub fn overlap(beam: &BeamParams, a: ModeIndex, b: ModeIndex, z: f64) -> Result<f64> {
    let coarse = overlap_fixed(beam, a, b, z, QUAD_POINTS);
    let fine = overlap_fixed(beam, a, b, z, 2 * QUAD_POINTS);
    let delta = (fine - coarse).abs();
    if delta > QUAD_TOL {
        return Err(Error::QuadratureNotConverged { delta });
    }
    Ok(fine)
}

fn overlap_fixed(beam: &BeamParams, a: ModeIndex, b: ModeIndex, z: f64, n: usize) -> f64 {
    let w = beam_width(beam, z);
    let half = QUAD_HALF_WIDTH * w;
    let h = 2.0 * half / n as f64;
    let s = std::f64::consts::SQRT_2 / w;
    // the integrand factorizes on the tensor grid; precompute the 1D factors
    // so the double loop is pure multiply-add
    let factor = |order: u32| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let t = -half + (i as f64 + 0.5) * h;
                hermite(order, s * t).expect("index bound implies valid order")
                    * (-t * t / (w * w)).exp()
            })
            .collect()
    };
    let (ax, ay) = (factor(a.l), factor(a.m));
    let (bx, by) = (factor(b.l), factor(b.m));
    let norm = 2.0 / (std::f64::consts::PI * w * w)
        / (pow2_factorial(a.l) * pow2_factorial(a.m) * pow2_factorial(b.l) * pow2_factorial(b.m))
            .sqrt();
    let mut sum = 0.0;
    for i in 0..n {
        let row = ax[i] * bx[i];
        for j in 0..n {
            sum += row * ay[j] * by[j];
        }
    }
    sum * norm * h * h
}

/// Small transverse displacement and tilt of the beam axis, interpreted at
/// `reference_z` in the sense of the first-order mode decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementTilt {
    delta_x: f64,
    delta_theta: f64,
    reference_z: f64,
}

/// First-order validity bound on δx/w and δθ/α.
const SMALL_SIGNAL_BOUND: f64 = 0.1;

impl DisplacementTilt {
    /// Validates the small-signal bounds |δx|/w(Z) < 0.1 and |δθ|/α(Z) < 0.1.
    pub fn new(beam: &BeamParams, delta_x: f64, delta_theta: f64, reference_z: f64) -> Result<Self> {
        let w = beam_width(beam, reference_z);
        let alpha = divergence(beam, reference_z);
        if delta_x.abs() / w >= SMALL_SIGNAL_BOUND {
            return Err(Error::SmallSignalViolation(format!(
                "|delta_x|/w(Z) = {} >= {SMALL_SIGNAL_BOUND}",
                delta_x.abs() / w
            )));
        }
        if delta_theta.abs() / alpha >= SMALL_SIGNAL_BOUND {
            return Err(Error::SmallSignalViolation(format!(
                "|delta_theta|/alpha(Z) = {} >= {SMALL_SIGNAL_BOUND}",
                delta_theta.abs() / alpha
            )));
        }
        Ok(Self {
            delta_x,
            delta_theta,
            reference_z,
        })
    }

    pub fn delta_x(&self) -> f64 {
        self.delta_x
    }

    pub fn delta_theta(&self) -> f64 {
        self.delta_theta
    }

    pub fn reference_z(&self) -> f64 {
        self.reference_z
    }
}

/// Which normalization convention a [`ModeDecomposition`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionConvention {
    /// Σ|f_lm|² = 1.
    Normalized,
    /// f₀₀ = 1 with |f₁₀| ≪ 1; second-order normalization discarded.
    Perturbative,
}

/// Complex coefficients f_lm of a field over HG modes, all referenced to the
/// plane `reference_z` where the modes share phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeDecomposition {
    pub reference_z: f64,
    pub coefficients: BTreeMap<ModeIndex, Complex64>,
    pub convention: DecompositionConvention,
}

impl ModeDecomposition {
    pub fn coefficient(&self, idx: ModeIndex) -> Complex64 {
        self.coefficients
            .get(&idx)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }
}

/// First-order decomposition of a displaced/tilted fundamental beam:
/// f₀₀ = 1, f₁₀ = δx/w(Z) + i·δθ/α(Z), referenced to Z = dt.reference_z.
pub fn decompose_displaced(beam: &BeamParams, dt: &DisplacementTilt) -> ModeDecomposition {
    let z = dt.reference_z;
    let f10 = Complex64::new(
        dt.delta_x / beam_width(beam, z),
        dt.delta_theta / divergence(beam, z),
    );
    let mut coefficients = BTreeMap::new();
    coefficients.insert(ModeIndex::new(0, 0).unwrap(), Complex64::new(1.0, 0.0));
    coefficients.insert(ModeIndex::new(1, 0).unwrap(), f10);
    ModeDecomposition {
        reference_z: z,
        coefficients,
        convention: DecompositionConvention::Perturbative,
    }
}

/// Maps (δx, δθ) at Z to the waist-referenced pair:
///   δx₀ = δx·(R−Z)/R + Z·δθ,  δθ₀ = δθ − δx/R,
/// written with 1/R so the waist itself is regular. The matrix has unit
/// determinant, which makes the inverse exact.
fn to_waist_matrix(beam: &BeamParams, z: f64) -> [[f64; 2]; 2] {
    let c = curvature(beam, z);
    [[1.0 - z * c, z], [-c, 1.0]]
}

fn from_waist_matrix(beam: &BeamParams, z: f64) -> [[f64; 2]; 2] {
    let c = curvature(beam, z);
    [[1.0, -z], [c, 1.0 - z * c]]
}

fn apply(m: [[f64; 2]; 2], v: (f64, f64)) -> (f64, f64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

/// Re-expresses a displacement/tilt pair at a new reference plane.
///
/// Composes the exact Z → waist map with its inverse; the round trip is the
/// identity to rounding. Fails if the transformed pair violates the
/// small-signal bounds at `new_z`.
pub fn reference_transform(
    beam: &BeamParams,
    dt: &DisplacementTilt,
    new_z: f64,
) -> Result<DisplacementTilt> {
    let at_waist = apply(
        to_waist_matrix(beam, dt.reference_z),
        (dt.delta_x, dt.delta_theta),
    );
    let at_new = apply(from_waist_matrix(beam, new_z), at_waist);
    DisplacementTilt::new(beam, at_new.0, at_new.1, new_z)
}
