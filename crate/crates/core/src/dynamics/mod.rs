//! Lattice dynamics of the coupled wavefunction / gauge-field system:
//! state containers, current densities, steppers, the gauge-sector
//! action, and the regime-specific verification runs.

pub mod action;
pub mod current;
pub mod gauge;
pub mod hamiltonian;
pub mod run;
pub mod state;

pub use action::{chern_simons_action, chern_simons_increment, CsAction};
pub use current::{
    continuity_residual, current_density, current_density_of, eps_rotate, hall_fraction_of,
    hall_residual, hall_residual_best, longitudinal_fraction_of, ohm_residual_classical,
    ohm_residual_classical_best, CurrentField, CurrentTag, OhmResidual,
};
pub use gauge::{step_gauge, GaugeSlope, GaugeStepOptions, GaugeStepper};
pub use hamiltonian::{
    apply_hamiltonian, dirichlet_ground_energy, dirichlet_ground_mode, stability_bound, step_psi,
    PsiStepper, PsiWorkspace,
};
pub use run::{
    classical_gauge_run, drude_drift_velocity, quantum_run, ClassicalRunReport, DiagRow,
    GaugeInit, PsiInit, QuantumRunReport, RunOutcome, SigmaMode, SimConfig, Simulation,
};
pub use state::{boundary_ramp_potential, LatticeState};
