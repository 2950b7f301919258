//! Shared helpers for the command-line integration tests.
#![allow(dead_code)]

use std::path::Path;

/// Reference geometry: mirror three Rayleigh ranges upstream of the waist,
/// detector at z₀/3, which puts the Gouy separation at exactly π/2
/// (arctan 3 + arctan ⅓ = π/2).
pub fn reference_config(n_points: usize) -> String {
    let z0 = std::f64::consts::PI * 1e-3 * 1e-3 / 1064e-9;
    format!(
        "\
wavelength_m = 1064e-9
waist_m = 1e-3
power_w = 10
inertia_kgm2 = 1e-8
mass_kg = 0.01
mirror_z_m = {:.17e}
detect_z_m = {:.17e}
f_min_hz = 1
f_max_hz = 1000
n_points = {n_points}
scale = log
channel = rotation
asd = false
",
        -3.0 * z0,
        z0 / 3.0
    )
}

/// Parses a CSV emitted by the tool: skips `#` comment lines and the header
/// row, keeps any row whose fields all parse as numbers.
pub fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| {
            l.split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .ok()
        })
        .collect()
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
