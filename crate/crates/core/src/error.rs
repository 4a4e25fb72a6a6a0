use thiserror::Error;

/// Errors raised by construction and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("magnetic length undefined at zero field")]
    ZeroFieldMagneticLength,

    #[error("quantum limit undefined at zero field")]
    ZeroFieldQuantumLimit,

    #[error("commutator undefined: quantization parameter vanishes")]
    DegenerateQuantization,

    #[error("Chern-Simons kinetic term degenerate")]
    DegenerateGaugeKineticTerm,

    #[error("no Hall channel: system insulating")]
    InsulatingSystem,

    #[error("constraint degenerate: zero mean field")]
    ZeroMeanField,

    #[error("no current to profile")]
    NoCurrent,

    #[error("grid too small: {nx}x{ny} (need at least {min}x{min})")]
    GridTooSmall { nx: usize, ny: usize, min: usize },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("time step {dt} violates stability bound {bound}")]
    StabilityBound { dt: f64, bound: f64 },

    #[error("need at least {need} stored time slices, have {have}")]
    TooFewSlices { need: usize, have: usize },

    #[error("empty sweep")]
    EmptySweep,

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("iterative solver failed to converge within {max_iter} iterations (residual {residual:.3e})")]
    SolverDiverged { max_iter: usize, residual: f64 },
}
