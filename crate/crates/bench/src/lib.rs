//! Benchmark fixtures shared by the criterion targets.

use hallsim_core::dynamics::{GaugeInit, PsiInit, SigmaMode, SimConfig};
use hallsim_core::params::PhysicalParams;

/// Quantum-regime coupled-run configuration on an `nx` by `nx` grid.
pub fn quantum_config(nx: usize, steps: usize) -> SimConfig {
    let b = 6.0;
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 2.0, b, b).unwrap();
    let mut cfg = SimConfig::new(p, nx, nx, 0.1).unwrap();
    cfg.dt = 0.025 * 0.1 * 0.1;
    cfg.steps = steps;
    cfg.taper_rings = 4;
    cfg.measure_margin = (nx / 8).max(3);
    cfg.sigma_mode = SigmaMode::Quantized;
    cfg.psi_init = PsiInit::PlaneWave { kx: 0.5, ky: 0.0 };
    cfg.gauge_init = GaugeInit::Zero;
    cfg
}
