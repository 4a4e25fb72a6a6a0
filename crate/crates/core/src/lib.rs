//! Semiclassical transport and gauge-field dynamics for 2D Hall systems.
//!
//! The crate covers four layers:
//!
//! - closed-form magnetotransport (Drude tensor, quantum-limit Hall
//!   conductivity, regime classification, plateau staircase),
//! - quantization checks for the gauge-sector normalization parameter
//!   (integer snapping, phase-space wavefunctional winding, commutator
//!   algebra on a single mode),
//! - lattice dynamics of a minimally coupled wavefunction and a pair of
//!   gauge potentials on a bounded 2D grid, with both current-density
//!   definitions and Ohm-law residual diagnostics,
//! - the Gauss-law constraint, discrete Helmholtz splitting of the gauge
//!   field, and edge-current profiling against the magnetic length.
//!
//! All numerics default to natural units (e = hbar = mass = 1), in which
//! conductivities are expressed directly in conductance-quantum units.

pub mod constraint_edge;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod params;
pub mod quantization;
pub mod transport;

pub use constraint_edge::{ConstraintReport, EdgeProfile};
pub use dynamics::{CurrentField, CurrentTag, LatticeState, SimConfig};
pub use error::CoreError;
pub use grid::Grid2D;
pub use params::{PhysicalParams, UnitScales, UnitSystem};
pub use transport::{ConductivityTensor, Regime, RegimeKind, RegimeThresholds};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;
