//! Acceptance suite for the library: each test evaluates one criterion at
//! its stated tolerance and prints a PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).

mod common;

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use optlever::beam::{divergence, BeamParams};
use optlever::constants::angular_frequency;
use optlever::hg::{decompose_displaced, overlap, DisplacementTilt, ModeIndex};
use optlever::mc::validate_budget;
use optlever::quadrature::{ponderomotive, TwoPhotonTransfer};
use optlever::rotation::{
    self, budget, frequency_grid, gouy_separation, kappa1, rotation_noise_pipeline,
    rotation_noise_psd, theta_sql, GridScale, LeverConfig, MirrorSetup,
};
use optlever::solver::solve_detect_position;
use optlever::translation;

fn report(criterion: usize, name: &str, ok: bool) {
    println!(
        "criterion {criterion} [{}]: {name}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {name}");
}

fn reference_beam() -> BeamParams {
    BeamParams::new(1064e-9, 1e-3).unwrap()
}

/// Reference lever: 10 W on a gram-scale mirror three Rayleigh ranges
/// upstream of the waist, detected where the Gouy separation is exactly π/2.
fn reference_config() -> LeverConfig {
    let beam = reference_beam();
    let z0 = beam.rayleigh_range();
    let setup = MirrorSetup::new(beam, 10.0, 1e-8, Some(0.01), -3.0 * z0).unwrap();
    LeverConfig::new(setup, z0 / 3.0).unwrap()
}

#[test]
fn criterion_1_hg_orthonormality() {
    let start = Instant::now();
    let beam = reference_beam();
    let mut modes = Vec::new();
    for l in 0..=3u32 {
        for m in 0..=3u32 {
            if l + m <= 3 {
                modes.push(ModeIndex::new(l, m).unwrap());
            }
        }
    }
    let mut worst: f64 = 0.0;
    for &a in &modes {
        for &b in &modes {
            let expected = if a == b { 1.0 } else { 0.0 };
            let v = overlap(&beam, a, b, 0.0).unwrap();
            worst = worst.max((v - expected).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        &format!("overlap matrix l+m<=3 vs identity, max deviation {worst:.2e} (limit 1e-6), {elapsed:.2} s (limit 10 s)"),
        worst <= 1e-6 && elapsed < 10.0,
    );
}

#[test]
fn criterion_2_displaced_beam_decomposition() {
    let beam = reference_beam();
    let oracle = common::OracleBeam::new(beam.wavelength(), beam.waist_radius());
    let w0 = beam.waist_radius();
    let alpha0 = divergence(&beam, 0.0);
    let m10 = ModeIndex::new(1, 0).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for ratio in [1e-4_f64, 1e-3, 1e-2] {
        let tol = (2.0 * ratio).max(1e-3);

        // pure displacement: real part of the brute-force overlap vs dx/w0
        let dt = DisplacementTilt::new(&beam, ratio * w0, 0.0, 0.0).unwrap();
        let implemented = decompose_displaced(&beam, &dt).coefficient(m10);
        let brute = common::brute_force_f10(&oracle, ratio * w0, 0.0, 400);
        let err_x = (brute.re - implemented.re).abs() / implemented.re.abs();

        // pure tilt: imaginary part vs dtheta/alpha0
        let dt = DisplacementTilt::new(&beam, 0.0, ratio * alpha0, 0.0).unwrap();
        let implemented = decompose_displaced(&beam, &dt).coefficient(m10);
        let brute = common::brute_force_f10(&oracle, 0.0, ratio * alpha0, 400);
        let err_t = (brute.im - implemented.im).abs() / implemented.im.abs();

        detail.push_str(&format!(
            " ratio {ratio:.0e}: dx err {err_x:.1e}, dtheta err {err_t:.1e} (tol {tol:.0e});"
        ));
        ok &= err_x <= tol && err_t <= tol;
    }
    report(2, &format!("first-order decomposition vs quadrature oracle:{detail}"), ok);
}

#[test]
fn criterion_3_symplectic_preservation() {
    let mut rng = ChaCha12Rng::seed_from_u64(314159);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        // the raw defect grows with the squared matrix norm, so κ is kept at
        // order unity to hold the composition in the 1e-12 regime
        let mut t = TwoPhotonTransfer::identity();
        for _ in 0..4 {
            t = ponderomotive(rng.gen_range(0.0..1.0)).after(&t);
            t = TwoPhotonTransfer::rotation(
                rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
            )
            .after(&t);
        }
        worst = worst.max(common::symplectic_defect(&t.matrix));
    }
    report(
        3,
        &format!("10^4 random shear/rotation compositions, max MtJM-J deviation {worst:.2e} (limit 1e-12)"),
        worst <= 1e-12,
    );
}

#[test]
fn criterion_4_sql_bound() {
    let mut ok = true;
    let n = 1000;
    for i in 0..n {
        let kappa = 10f64.powf(-3.0 + 6.0 * i as f64 / (n - 1) as f64);
        let (total, _, _) =
            rotation::noise_psd_from_kappa(kappa, std::f64::consts::FRAC_PI_2, 1.0).unwrap();
        ok &= total >= 1.0 - 1e-12;
    }
    let (at_unity, _, _) =
        rotation::noise_psd_from_kappa(1.0, std::f64::consts::FRAC_PI_2, 1.0).unwrap();
    ok &= (at_unity - 1.0).abs() <= 1e-12;
    report(
        4,
        &format!("S/theta_SQL^2 >= 1 over kappa in [1e-3,1e3], value at kappa=1 is {at_unity}"),
        ok,
    );
}

#[test]
fn criterion_5_backaction_cancellation() {
    // f = 3 Hz puts kappa1 above 1/2 for the reference setup, so the
    // cancelled noise must fall strictly below the SQL
    let setup = *reference_config().setup();
    let omega_star = angular_frequency(3.0);
    let detect = solve_detect_position(&setup, omega_star).unwrap();
    let config = LeverConfig::new(setup, detect).unwrap();

    let kappa = kappa1(&setup, omega_star).unwrap();
    let psi = gouy_separation(&config);
    let cot = psi.cos() / psi.sin();
    let cond_err = (kappa - cot).abs();

    let (total, _, _) = rotation_noise_psd(&config, omega_star).unwrap();
    let sql = theta_sql(setup.mirror_inertia(), omega_star).unwrap();
    let predicted = sql * sql / (2.0 * kappa);
    let noise_err = (total - predicted).abs() / predicted;

    let ok = cond_err <= 1e-10 * kappa
        && noise_err <= 1e-9
        && kappa > 0.5
        && total < sql * sql;
    report(
        5,
        &format!(
            "cancellation: |kappa1-cot psi| = {cond_err:.2e} (limit {:.2e}), noise err {noise_err:.2e}, kappa1 = {kappa:.3}, total/SQL^2 = {:.3}",
            1e-10 * kappa,
            total / (sql * sql)
        ),
        ok,
    );
}

#[test]
fn criterion_6_cross_form_identity() {
    let mut rng = ChaCha12Rng::seed_from_u64(271828);
    let mut ok = true;
    for _ in 0..1000 {
        let kappa = 10f64.powf(rng.gen_range(-3.0..3.0));
        let angle = rng.gen_range(0.001..std::f64::consts::PI - 0.001);
        let sql = 10f64.powf(rng.gen_range(-20.0..0.0));
        let (t_rot, s_rot, b_rot) = rotation::noise_psd_from_kappa(kappa, angle, sql).unwrap();
        let (t_tr, s_tr, b_tr) = translation::noise_psd_from_kappa(kappa, angle, sql).unwrap();
        ok &= (t_rot - t_tr).abs() <= 1e-12 * t_tr;
        ok &= (s_rot - s_tr).abs() <= 1e-12 * s_tr;
        ok &= (b_rot - b_tr).abs() <= 1e-12 * b_tr.max(f64::MIN_POSITIVE);
    }
    report(
        6,
        "S_theta,psi(kappa1, theta_SQL) == S_z,eta(kappa0, z_SQL) over 10^3 random tuples (1e-12 relative)",
        ok,
    );
}

#[test]
fn criterion_7_closed_form_vs_pipeline() {
    let config = reference_config();
    let spectrum = budget(&config, 1.0, 1000.0, 100, GridScale::Log).unwrap();
    let mut worst: f64 = 0.0;
    for (i, &f) in spectrum.frequencies_hz.iter().enumerate() {
        let piped = rotation_noise_pipeline(&config, angular_frequency(f)).unwrap();
        worst = worst.max((piped - spectrum.total[i]).abs() / spectrum.total[i]);
    }
    report(
        7,
        &format!("composed pipeline vs closed form at every budget point, worst relative deviation {worst:.2e} (limit 1e-12)"),
        worst <= 1e-12,
    );
}

#[test]
fn criterion_8_monte_carlo_oracle() {
    let start = Instant::now();
    let config = reference_config();
    let grid = frequency_grid(1.0, 1000.0, 20, GridScale::Log).unwrap();
    let report_a = validate_budget(&config, &grid, 100_000, 20260823).unwrap();
    let report_b = validate_budget(&config, &grid, 100_000, 20260823).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let worst_z = report_a
        .z_scores
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.abs()));
    let ok = report_a.pass && report_a == report_b && elapsed < 60.0;
    report(
        8,
        &format!("MC oracle: 10^5 samples x 20 points, max |z| = {worst_z:.2} (limit 5), deterministic, {elapsed:.1} s (limit 60 s)"),
        ok,
    );
}
