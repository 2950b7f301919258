//! Inverse problems of the angular channel: detector placement and frequency
//! for backaction cancellation, and the noise-minimizing Gouy separation.
//!
//! Closed forms are the primary path; a bracketed bisection and a
//! golden-section search run as verification passes and guard the closed
//! forms against drift.

use crate::beam::{beam_width, gouy_phase};
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::rotation::{kappa1, noise_psd_from_kappa, theta_sql, LeverConfig, MirrorSetup};

/// Relative residual allowed when a solver result is re-substituted.
const RESIDUAL_TOL: f64 = 1e-10;

/// Detector position Z_meas that cancels backaction at Ω*.
///
/// Computes ψ* = arccot(κ₁(Ω*)) ∈ (0, π/2) and inverts the Gouy phase:
/// Z_meas = z₀·tan(ζ(Z₁) + ψ*). Fails with `NoPhysicalSolution` when the
/// required total Gouy phase reaches π/2, which forward free propagation
/// cannot provide.
pub fn solve_detect_position(setup: &MirrorSetup, omega_star: f64) -> Result<f64> {
    let kappa = kappa1(setup, omega_star)?;
    let psi_star = (1.0 / kappa).atan(); // arccot(kappa) in (0, pi/2)
    let zeta_mirror = gouy_phase(setup.beam(), setup.mirror_z());
    let zeta_meas = zeta_mirror + psi_star;
    if zeta_meas >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::NoPhysicalSolution {
            required: zeta_meas,
            zeta_mirror,
        });
    }
    let detect_z = setup.beam().rayleigh_range() * zeta_meas.tan();

    // verification pass: the returned position must satisfy cot(psi) = kappa1
    let config = LeverConfig::new(*setup, detect_z)?;
    let psi = crate::rotation::gouy_separation(&config);
    let residual = (kappa - psi.cos() / psi.sin()).abs();
    debug_assert!(residual <= RESIDUAL_TOL * kappa);
    if residual > RESIDUAL_TOL * kappa {
        return Err(Error::InvalidParameter(format!(
            "detector-position solution failed verification: residual {residual:e}"
        )));
    }
    Ok(detect_z)
}

/// Frequency Ω* where κ₁(Ω*) = cot ψ for the configured detector position.
///
/// κ₁ = C/Ω² with C = 2I₀ω₀w(Z₁)²/(Ic²), so Ω* = √(C·tan ψ). Requires
/// ψ < π/2; otherwise cot ψ ≤ 0 and no positive κ₁ can match it.
pub fn solve_cancellation_frequency(config: &LeverConfig) -> Result<f64> {
    let psi = crate::rotation::gouy_separation(config);
    let cot = psi.cos() / psi.sin();
    if cot <= 0.0 {
        return Err(Error::NoCancellation { psi });
    }
    let setup = config.setup();
    let w = beam_width(setup.beam(), setup.mirror_z());
    let c_coeff = 2.0 * setup.laser_power() * setup.beam().carrier_angular_frequency() * w * w
        / (setup.mirror_inertia() * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    let omega_star = (c_coeff * psi.tan()).sqrt();

    // verification pass: bracketed bisection on g(omega) = kappa1 - cot(psi)
    let g = |omega: f64| kappa1(setup, omega).unwrap() - cot;
    let refined = bisect(g, omega_star / 10.0, omega_star * 10.0, 200);
    let residual = g(refined.unwrap_or(omega_star)).abs();
    if residual > RESIDUAL_TOL * cot {
        return Err(Error::InvalidParameter(format!(
            "cancellation-frequency solution failed verification: residual {residual:e}"
        )));
    }
    Ok(omega_star)
}

/// Gouy separation minimizing S_θ,ψ at the given frequency, with the noise
/// at the minimum: cot ψ = κ₁, S = θ_SQL²/(2κ₁).
///
/// The analytic minimizer is confirmed by a golden-section search over
/// (0, π); the two must agree to 1e−8 in ψ.
pub fn optimal_psi(setup: &MirrorSetup, omega: f64) -> Result<(f64, f64)> {
    let kappa = kappa1(setup, omega)?;
    let sql = theta_sql(setup.mirror_inertia(), omega)?;
    let psi = (1.0 / kappa).atan();
    let psd = sql * sql / (2.0 * kappa);

    let objective = |p: f64| noise_psd_from_kappa(kappa, p, sql).unwrap().0;
    let eps = 1e-9;
    let (coarse_psi, _) = golden_section(objective, eps, std::f64::consts::PI - eps, 1e-9);
    // the objective is flat to rounding near the minimum, so golden section
    // alone stalls around sqrt(machine-eps); one parabolic vertex step
    // recovers the extra digits
    let numeric_psi = refine_parabolic(objective, coarse_psi, 1e-5);
    debug_assert!((numeric_psi - psi).abs() <= 1e-8);
    Ok((psi, psd))
}

/// Bisection on a bracketing interval; returns None if [a, b] does not
/// bracket a sign change.
fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, max_iter: usize) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 || (b - a).abs() <= f64::EPSILON * mid.abs() {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

/// One parabolic vertex refinement of a minimum near `x0` with spacing `d`.
fn refine_parabolic(f: impl Fn(f64) -> f64, x0: f64, d: f64) -> f64 {
    let (fm, f0, fp) = (f(x0 - d), f(x0), f(x0 + d));
    let denom = fp - 2.0 * f0 + fm;
    if denom <= 0.0 {
        return x0;
    }
    x0 - 0.5 * d * (fp - fm) / denom
}

/// Golden-section minimization of `f` on [a, b] to absolute tolerance `tol`.
fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
