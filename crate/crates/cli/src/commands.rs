//! Subcommand implementations: each one turns a validated [`RunConfig`]
//! into a CSV stream on the chosen output.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context};

use optlever::beam::gouy_phase;
use optlever::constants::angular_frequency;
use optlever::hg::overlap;
use optlever::mc::validate_budget;
use optlever::rotation::{
    budget, frequency_grid, gouy_separation, kappa1, rotation_noise_psd, theta_sql,
};
use optlever::solver::{optimal_psi, solve_cancellation_frequency, solve_detect_position};
use optlever::translation::{kappa0, z_sql};
use optlever::{LeverConfig, ModeIndex};

use crate::config::{Channel, RunConfig};

/// Sample count for the Monte Carlo validator.
const VALIDATE_SAMPLES: usize = 100_000;

/// Homodyne angle used for the translational channel; the phase quadrature
/// carries the position signal.
const TRANSLATION_ETA: f64 = FRAC_PI_2;

/// Solver and sweep parameters selectable with `--target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// Detector position along the beam axis.
    Position,
    /// Backaction-cancellation frequency.
    Frequency,
    /// Gouy separation (homodyne angle) of the readout.
    Psi,
}

fn open_output(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// 17-significant-digit serialization used for every numeric CSV field.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn provenance(config: &RunConfig) -> String {
    format!(
        "# config_fingerprint = {}, tool_version = {}",
        config.fingerprint(),
        env!("CARGO_PKG_VERSION")
    )
}

fn require_freq(freq_hz: Option<f64>) -> anyhow::Result<f64> {
    match freq_hz {
        Some(f) if f > 0.0 && f.is_finite() => Ok(f),
        Some(f) => bail!("--freq-hz must be a positive finite frequency, got {f}"),
        None => bail!("this invocation needs --freq-hz"),
    }
}

/// Noise budget over the configured frequency grid.
pub fn run_budget(config: &RunConfig, out: Option<&Path>) -> anyhow::Result<()> {
    let mut w = open_output(out)?;
    writeln!(w, "{}", provenance(config))?;

    let (unit_psd, unit_asd) = match config.channel {
        Channel::Rotation => ("rad2_hz", "rad_rthz"),
        Channel::Translation => ("m2_hz", "m_rthz"),
    };
    let (prefix, unit) = if config.asd {
        ("asd", unit_asd)
    } else {
        ("psd", unit_psd)
    };
    writeln!(
        w,
        "freq_hz,{prefix}_total_{unit},{prefix}_sensing_{unit},{prefix}_backaction_{unit},{prefix}_sql_{unit}"
    )?;

    let scale = |v: f64| if config.asd { v.sqrt() } else { v };
    match config.channel {
        Channel::Rotation => {
            let lever = config.lever_config()?;
            let spectrum = budget(
                &lever,
                config.f_min_hz,
                config.f_max_hz,
                config.n_points,
                config.scale,
            )?;
            for (i, &f) in spectrum.frequencies_hz.iter().enumerate() {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    num(f),
                    num(scale(spectrum.total[i])),
                    num(scale(spectrum.sensing[i])),
                    num(scale(spectrum.backaction[i])),
                    num(scale(spectrum.sql[i]))
                )?;
            }
        }
        Channel::Translation => {
            let setup = config.translation_setup()?;
            let grid = frequency_grid(
                config.f_min_hz,
                config.f_max_hz,
                config.n_points,
                config.scale,
            )?;
            for f in grid {
                let omega = angular_frequency(f);
                let kappa = kappa0(&setup, omega)?;
                let sql = z_sql(&setup, omega)?;
                let (total, sensing, backaction) =
                    optlever::translation::noise_psd_from_kappa(kappa, TRANSLATION_ETA, sql)?;
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    num(f),
                    num(scale(total)),
                    num(scale(sensing)),
                    num(scale(backaction)),
                    num(scale(sql * sql))
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Noise versus detector position or homodyne angle at a fixed frequency.
pub fn run_sweep(
    config: &RunConfig,
    target: Target,
    freq_hz: Option<f64>,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let f = require_freq(freq_hz)?;
    let omega = angular_frequency(f);
    let n = config.n_points;
    let mut w = open_output(out)?;
    writeln!(w, "{}", provenance(config))?;

    let scale = |v: f64| if config.asd { v.sqrt() } else { v };
    let (prefix, unit) = if config.asd {
        ("asd", "rad_rthz")
    } else {
        ("psd", "rad2_hz")
    };

    match (config.channel, target) {
        (Channel::Translation, _) => {
            bail!("sweep supports the rotation channel only; set `channel = rotation`")
        }
        (Channel::Rotation, Target::Frequency) => {
            bail!("sweep targets are `position` and `psi`; use `budget` for a frequency grid")
        }
        (Channel::Rotation, Target::Psi) => {
            // abstract readout-angle sweep over the open interval (0, pi)
            let setup = config.mirror_setup()?;
            let kappa = kappa1(&setup, omega)?;
            let sql = theta_sql(setup.mirror_inertia(), omega)?;
            writeln!(
                w,
                "psi_rad,{prefix}_total_{unit},{prefix}_sensing_{unit},{prefix}_backaction_{unit},{prefix}_sql_{unit}"
            )?;
            for k in 0..n {
                let psi = PI * (k + 1) as f64 / (n + 1) as f64;
                let (total, sensing, backaction) =
                    optlever::rotation::noise_psd_from_kappa(kappa, psi, sql)?;
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    num(psi),
                    num(scale(total)),
                    num(scale(sensing)),
                    num(scale(backaction)),
                    num(scale(sql * sql))
                )?;
            }
        }
        (Channel::Rotation, Target::Position) => {
            // detector positions covering the physically reachable Gouy
            // separations (0, pi/2 - zeta_mirror) via the tangent map
            let setup = config.mirror_setup()?;
            let z0 = setup.beam().rayleigh_range();
            let zeta_mirror = gouy_phase(setup.beam(), setup.mirror_z());
            let psi_max = FRAC_PI_2 - zeta_mirror;
            writeln!(
                w,
                "detect_z_m,psi_rad,{prefix}_total_{unit},{prefix}_sensing_{unit},{prefix}_backaction_{unit},{prefix}_sql_{unit}"
            )?;
            let sql = theta_sql(setup.mirror_inertia(), omega)?;
            for k in 0..n {
                let psi = psi_max * (k + 1) as f64 / (n + 1) as f64;
                let detect_z = z0 * (zeta_mirror + psi).tan();
                let lever = LeverConfig::new(setup, detect_z)?;
                let (total, sensing, backaction) = rotation_noise_psd(&lever, omega)?;
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    num(detect_z),
                    num(psi),
                    num(scale(total)),
                    num(scale(sensing)),
                    num(scale(backaction)),
                    num(scale(sql * sql))
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Single-row solver output: the requested quantity plus the relative
/// residual of the cancellation condition at the solution.
pub fn run_solve(
    config: &RunConfig,
    target: Target,
    freq_hz: Option<f64>,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    if config.channel == Channel::Translation {
        bail!("solve supports the rotation channel only; set `channel = rotation`");
    }
    let setup = config.mirror_setup()?;

    let (label, solution, residual) = match target {
        Target::Position => {
            let omega = angular_frequency(require_freq(freq_hz)?);
            let detect_z = solve_detect_position(&setup, omega)?;
            let lever = LeverConfig::new(setup, detect_z)?;
            let psi = gouy_separation(&lever);
            let kappa = kappa1(&setup, omega)?;
            ("position", detect_z, (kappa - psi.cos() / psi.sin()).abs() / kappa)
        }
        Target::Frequency => {
            let lever = config.lever_config()?;
            let omega_star = solve_cancellation_frequency(&lever)?;
            let psi = gouy_separation(&lever);
            let kappa = kappa1(&setup, omega_star)?;
            (
                "frequency",
                omega_star / (2.0 * PI),
                (kappa - psi.cos() / psi.sin()).abs() / kappa,
            )
        }
        Target::Psi => {
            let omega = angular_frequency(require_freq(freq_hz)?);
            let (psi, _) = optimal_psi(&setup, omega)?;
            let kappa = kappa1(&setup, omega)?;
            ("psi", psi, (kappa - psi.cos() / psi.sin()).abs() / kappa)
        }
    };

    let mut w = open_output(out)?;
    writeln!(w, "{}", provenance(config))?;
    writeln!(w, "target,solution,residual")?;
    writeln!(w, "{label},{},{}", num(solution), num(residual))?;
    w.flush()?;
    Ok(())
}

/// Monte Carlo check of the analytic budget; returns the PASS/FAIL verdict.
pub fn run_validate(config: &RunConfig, seed: u64, out: Option<&Path>) -> anyhow::Result<bool> {
    if config.channel == Channel::Translation {
        bail!("validate supports the rotation channel only; set `channel = rotation`");
    }
    let lever = config.lever_config()?;
    let grid = frequency_grid(
        config.f_min_hz,
        config.f_max_hz,
        config.n_points,
        config.scale,
    )?;
    let report = validate_budget(&lever, &grid, VALIDATE_SAMPLES, seed)?;

    let mut w = open_output(out)?;
    writeln!(
        w,
        "{}, seed = {}, n_samples = {}, rng = {}",
        provenance(config),
        report.seed,
        report.n_samples,
        report.rng_algorithm
    )?;
    writeln!(
        w,
        "freq_hz,estimated_psd_rad2_hz,analytic_psd_rad2_hz,standard_error_rad2_hz,z_score"
    )?;
    for (i, &f) in report.frequencies_hz.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{},{}",
            num(f),
            num(report.estimated_psd[i]),
            num(report.analytic_psd[i]),
            num(report.standard_error[i]),
            num(report.z_scores[i])
        )?;
    }
    w.flush()?;

    let worst = report
        .z_scores
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.abs()));
    if report.pass {
        println!(
            "PASS: {} points within {} sigma (worst |z| = {worst:.2})",
            report.frequencies_hz.len(),
            optlever::mc::Z_THRESHOLD
        );
    } else {
        println!(
            "FAIL: worst |z| = {worst:.2} exceeds {} sigma",
            optlever::mc::Z_THRESHOLD
        );
    }
    Ok(report.pass)
}

/// Numerical overlap matrix of the transverse modes with l + m ≤ 3.
pub fn run_modes(config: &RunConfig, out: Option<&Path>) -> anyhow::Result<()> {
    let beam = config.beam()?;
    let mut modes = Vec::new();
    for l in 0..=3u32 {
        for m in 0..=3u32 {
            if l + m <= 3 {
                modes.push(ModeIndex::new(l, m)?);
            }
        }
    }

    let mut w = open_output(out)?;
    writeln!(w, "{}", provenance(config))?;
    let header: Vec<String> = modes.iter().map(|m| format!("u{}{}", m.l(), m.m())).collect();
    writeln!(w, "mode,{}", header.join(","))?;
    for &a in &modes {
        let mut row = vec![format!("u{}{}", a.l(), a.m())];
        for &b in &modes {
            row.push(num(overlap(&beam, a, b, 0.0)?));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}
