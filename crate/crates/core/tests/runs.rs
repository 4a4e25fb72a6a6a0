//! End-to-end checks of the regime-specific verification runs.

use hallsim_core::dynamics::{
    classical_gauge_run, current_density, drude_drift_velocity, eps_rotate, quantum_run,
    CurrentTag, GaugeInit, PsiInit, SigmaMode, SimConfig, Simulation,
};
use hallsim_core::error::CoreError;
use hallsim_core::params::PhysicalParams;

fn classical_cfg(nx: usize, e0: f64) -> SimConfig {
    let p = PhysicalParams::natural(1.0, 1.0, 0.05).unwrap();
    let spacing = 31.5 / (nx - 1) as f64;
    let mut cfg = SimConfig::new(p, nx, nx, spacing).unwrap();
    cfg.steps = 40;
    cfg.taper_rings = 6;
    cfg.measure_margin = nx / 4;
    cfg.gauge_init = GaugeInit::UniformE { ex: e0, ey: 0.0 };
    cfg
}

#[test]
fn classical_run_recovers_ohm_current() {
    let report = classical_gauge_run(&classical_cfg(64, 0.02)).unwrap();
    assert!(!report.regime_warning);
    assert!(!report.zero_current);
    assert!(
        report.ohm_residual < 5e-3,
        "classical residual {:.3e}",
        report.ohm_residual
    );
    // The measured mean current sits on the model drift current.
    let rel = ((report.j_measured.0 - report.j_model.0).powi(2)
        + (report.j_measured.1 - report.j_model.1).powi(2))
    .sqrt()
        / report.j_model.0.hypot(report.j_model.1);
    assert!(rel < 1e-3, "mean current off the drift model by {rel:.3e}");
}

#[test]
fn classical_run_zero_field_gives_zero_current() {
    let report = classical_gauge_run(&classical_cfg(64, 0.0)).unwrap();
    assert!(report.zero_current);
    assert_eq!(report.j_model, (0.0, 0.0));
    // Absolute defect: only boundary-relaxation noise of the tapered
    // state survives in the measurement region, orders of magnitude
    // below the natural current scale e n hbar / (m a) ~ 2.
    assert!(
        report.ohm_residual < 1e-4,
        "zero-drive residual {:.3e}",
        report.ohm_residual
    );
}

#[test]
fn classical_drift_model_is_exactly_linear_in_the_field() {
    let p = PhysicalParams::natural(1.0, 1.0, 0.05).unwrap();
    let (vx, vy) = drude_drift_velocity(&p, 0.013, -0.007);
    let (wx, wy) = drude_drift_velocity(&p, 0.026, -0.014);
    assert!((wx - 2.0 * vx).abs() <= 1e-10 * wx.abs());
    assert!((wy - 2.0 * vy).abs() <= 1e-10 * wy.abs());
}

#[test]
fn classical_run_requires_uniform_drive() {
    let mut cfg = classical_cfg(32, 0.02);
    cfg.gauge_init = GaugeInit::Zero;
    assert!(matches!(
        classical_gauge_run(&cfg),
        Err(CoreError::InvalidParameter { .. })
    ));
}

#[test]
fn classical_run_warns_outside_regime() {
    let p = PhysicalParams::natural(1.0, 1.0, 5.0).unwrap();
    let mut cfg = SimConfig::new(p, 32, 32, 0.5).unwrap();
    cfg.steps = 10;
    cfg.gauge_init = GaugeInit::UniformE { ex: 0.02, ey: 0.0 };
    let report = classical_gauge_run(&cfg).unwrap();
    assert!(report.regime_warning);
}

/// Minimal-coupling cross-check: seen through the gauge-term current,
/// the classical relaxation state carries the Hall-only combination,
/// because the drive `A = E tau` contributes exactly `-sigma_0 E`.
#[test]
fn classical_state_satisfies_hall_form_under_gauge_current() {
    let cfg = classical_cfg(64, 0.02);
    let p = cfg.params;
    let report = classical_gauge_run(&cfg).unwrap();
    let state = &report.outcome.state;
    let j = current_density(state, &p, CurrentTag::WithGaugeTerm);
    let sigma_h = hallsim_core::transport::conductivity_classical(&p).hall;
    let (ex, ey) = report.applied_field;
    // j(a) should equal sigma_H * eps E with the matching convention.
    let (hx, hy) = eps_rotate(ex, ey, 1.0);
    let mut worst = 0.0f64;
    let g = state.grid;
    for (i, jy) in g.nodes_with_margin(16) {
        let k = g.idx(i, jy);
        worst = worst
            .max((j.j1[k] - sigma_h * hx).abs())
            .max((j.j2[k] - sigma_h * hy).abs());
    }
    let scale = p.e * p.e * p.density * p.tau / p.mass * ex;
    assert!(
        worst / scale < 5e-3,
        "gauge-term current misses the Hall form by {:.3e}",
        worst / scale
    );
}

fn quantum_cfg() -> SimConfig {
    let b = 6.0;
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 2.0, b, b).unwrap();
    let mut cfg = SimConfig::new(p, 64, 64, 0.1).unwrap();
    cfg.dt = 0.025 * 0.1 * 0.1;
    cfg.steps = 300;
    cfg.measure_margin = 14;
    cfg.taper_rings = 4;
    cfg.sigma_mode = SigmaMode::Quantized;
    cfg.psi_init = PsiInit::PlaneWave { kx: 0.5, ky: 0.0 };
    cfg.gauge_init = GaugeInit::Zero;
    cfg
}

#[test]
fn quantum_run_satisfies_hall_ohm_law() {
    let report = quantum_run(&quantum_cfg()).unwrap();
    assert_eq!(report.sigma_h, 1.0);
    assert!(!report.regime_warning);
    assert!(
        report.hall_residual < 5e-3,
        "hall residual {:.3e}",
        report.hall_residual
    );
    assert!(
        report.longitudinal_fraction < 1e-2,
        "longitudinal fraction {:.3e}",
        report.longitudinal_fraction
    );
    assert!(report.norm_drift_rel < 1e-8);
    assert!(report.action_ratio > 0.0);
}

#[test]
fn quantum_run_stationary_configuration_is_a_fixed_point() {
    let b = 6.0;
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 2.0, b, b).unwrap();
    let mut cfg = SimConfig::new(p, 32, 32, 0.1).unwrap();
    cfg.steps = 40;
    cfg.sigma_mode = SigmaMode::Quantized;
    cfg.psi_init = PsiInit::GroundMode;
    cfg.gauge_init = GaugeInit::Zero;
    let report = quantum_run(&cfg).unwrap();
    // Real stationary mode: currents, gauge fields, and the action all
    // stay at solver-noise level, so both sides of the Ohm relation
    // vanish identically.
    let state = &report.outcome.state;
    let j = current_density(state, &p, CurrentTag::WithGaugeTerm);
    assert!(
        j.inf_norm(&state.grid, 1) < 1e-10,
        "fixed point leaked current {:.3e}",
        j.inf_norm(&state.grid, 1)
    );
    let a_max = state
        .a1
        .iter()
        .chain(&state.a2)
        .fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(a_max < 1e-10, "gauge field moved: {a_max:.3e}");
    assert!(report.s_cs.abs() < 1e-18);
}

#[test]
fn quantum_run_rejects_insulating_filling() {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 2.0, 0.2, 6.0).unwrap();
    let mut cfg = SimConfig::new(p, 32, 32, 0.1).unwrap();
    cfg.sigma_mode = SigmaMode::Quantized;
    assert!(matches!(
        quantum_run(&cfg),
        Err(CoreError::InsulatingSystem)
    ));
}

#[test]
fn hall_current_is_linear_in_the_quantized_coefficient() {
    // Identical E field, sigma_H = 1 vs 2: the Ohm-law current doubles.
    let (e1, e2) = (0.3, -0.4);
    let (h1x, h1y) = eps_rotate(e1, e2, 1.0);
    let j1 = (1.0 * h1x, 1.0 * h1y);
    let j2 = (2.0 * h1x, 2.0 * h1y);
    assert!((j2.0 - 2.0 * j1.0).abs() <= 1e-6 * j2.0.abs().max(1e-300));
    assert!((j2.1 - 2.0 * j1.1).abs() <= 1e-6 * j2.1.abs().max(1e-300));
}

#[test]
fn sim_config_enforces_stability_bound_at_construction() {
    let p = PhysicalParams::natural(1.0, 1.0, 1.0).unwrap();
    let mut cfg = SimConfig::new(p, 32, 32, 0.2).unwrap();
    cfg.dt = 10.0 * cfg.stability_factor * p.mass * 0.2 * 0.2 / p.hbar;
    assert!(matches!(
        cfg.validate(),
        Err(CoreError::StabilityBound { .. })
    ));
}

#[test]
fn crossover_simulation_runs_with_continuous_sigma() {
    let p = PhysicalParams::natural(1.0, 2.0, 1.0).unwrap();
    let mut cfg = SimConfig::new(p, 32, 32, 0.2).unwrap();
    cfg.steps = 30;
    cfg.psi_init = PsiInit::PlaneWave { kx: 0.3, ky: 0.1 };
    let sim = Simulation::new(cfg).unwrap();
    assert_eq!(sim.sigma_h(), 2.0); // n e / B
    let outcome = sim.run().unwrap();
    assert_eq!(outcome.diagnostics.len(), 29);
    assert!(outcome.norm_drift_rel < 1e-8);
}
