//! Test-only oracles, written from the mode formulas directly and kept
//! independent of the library implementation they check.
//!
//! Each test target pulls in a different subset of these helpers.
#![allow(dead_code)]

use num_complex::Complex64;

/// Independent Gaussian-beam scales derived only from wavelength and waist.
pub struct OracleBeam {
    pub w0: f64,
    pub k0: f64,
    pub z0: f64,
}

impl OracleBeam {
    pub fn new(wavelength: f64, w0: f64) -> Self {
        let k0 = 2.0 * std::f64::consts::PI / wavelength;
        Self {
            w0,
            k0,
            z0: k0 * w0 * w0 / 2.0,
        }
    }

    pub fn width(&self, z: f64) -> f64 {
        self.w0 * (1.0 + (z / self.z0) * (z / self.z0)).sqrt()
    }

    pub fn inv_radius(&self, z: f64) -> f64 {
        z / (z * z + self.z0 * self.z0)
    }

    pub fn gouy(&self, z: f64) -> f64 {
        (z / self.z0).atan()
    }

    pub fn alpha0(&self) -> f64 {
        2.0 / (self.k0 * self.w0)
    }
}

/// Exact complex field of the fundamental mode of a beam whose axis is
/// displaced by `dx` and tilted by `dtheta` (coordinate rotation about the
/// waist), evaluated at (x, y) on the lab plane z = 0. The common e^{iω₀t}
/// factor is dropped.
pub fn displaced_fundamental(b: &OracleBeam, dx: f64, dtheta: f64, x: f64, y: f64) -> Complex64 {
    let (s, c) = dtheta.sin_cos();
    // beam-frame coordinates of the lab point (x, y, z = 0)
    let zb = -(x - dx) * s;
    let xb = (x - dx) * c;
    let w = b.width(zb);
    let envelope = (2.0 / (std::f64::consts::PI * w * w)).sqrt()
        * (-(xb * xb + y * y) / (w * w)).exp();
    let phase =
        -b.k0 * zb - b.k0 * (xb * xb + y * y) * b.inv_radius(zb) / 2.0 + b.gouy(zb);
    envelope * Complex64::from_polar(1.0, phase)
}

/// Real 10-mode envelope at the waist plane.
pub fn u10_at_waist(b: &OracleBeam, x: f64, y: f64) -> f64 {
    (2.0 / (std::f64::consts::PI * b.w0 * b.w0)).sqrt() * (2.0 * x / b.w0)
        * (-(x * x + y * y) / (b.w0 * b.w0)).exp()
}

/// Brute-force overlap of the displaced/tilted fundamental against u₁₀ at
/// the waist plane, by midpoint tensor quadrature over ±8 w₀.
pub fn brute_force_f10(b: &OracleBeam, dx: f64, dtheta: f64, n: usize) -> Complex64 {
    let half = 8.0 * b.w0;
    let h = 2.0 * half / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let x = -half + (i as f64 + 0.5) * h;
        for j in 0..n {
            let y = -half + (j as f64 + 0.5) * h;
            sum += displaced_fundamental(b, dx, dtheta, x, y) * u10_at_waist(b, x, y);
        }
    }
    sum * h * h
}

/// MᵀJM − J, max absolute entry; the raw symplectic defect of a 2×2 matrix.
pub fn symplectic_defect(m: &[[f64; 2]; 2]) -> f64 {
    // J = [[0, 1], [-1, 0]]
    let j = [[0.0, 1.0], [-1.0, 0.0]];
    let mut mt_j_m = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let mut v = 0.0;
            for p in 0..2 {
                for q in 0..2 {
                    v += m[p][r] * j[p][q] * m[q][c];
                }
            }
            mt_j_m[r][c] = v;
        }
    }
    let mut worst: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            worst = worst.max((mt_j_m[r][c] - j[r][c]).abs());
        }
    }
    worst
}

/// Least-squares slope of ln(y) against ln(x).
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}
