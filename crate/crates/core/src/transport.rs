//! Closed-form magnetotransport: Drude tensor, quantum-limit Hall
//! conductivity, regime classification, and the plateau staircase.

use crate::error::CoreError;
use crate::params::{hall_parameter, PhysicalParams};
use crate::quantization::snap_sigma_h;
use crate::Result;

/// Conductivity pair `(longitudinal, hall)`, both non-negative.
///
/// As a 2x2 tensor acting on an E field the off-diagonal entries are
/// antisymmetric, `sigma_12 = -sigma_21 = hall`:
/// `j1 = longitudinal*E1 + hall*E2`, `j2 = -hall*E1 + longitudinal*E2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConductivityTensor {
    pub longitudinal: f64,
    pub hall: f64,
}

impl ConductivityTensor {
    /// Apply the tensor to a field vector `(e1, e2)`.
    pub fn apply(&self, e1: f64, e2: f64) -> (f64, f64) {
        (
            self.longitudinal * e1 + self.hall * e2,
            -self.hall * e1 + self.longitudinal * e2,
        )
    }

    /// Tensor entries as rows `[[s11, s12], [s21, s22]]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [
            [self.longitudinal, self.hall],
            [-self.hall, self.longitudinal],
        ]
    }
}

/// Transport regime by Hall parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    Classical,
    Crossover,
    Quantum,
}

impl RegimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeKind::Classical => "classical",
            RegimeKind::Crossover => "crossover",
            RegimeKind::Quantum => "quantum",
        }
    }
}

/// Decade thresholds making the asymptotic regimes operational.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    pub classical: f64,
    pub quantum: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            classical: 0.1,
            quantum: 10.0,
        }
    }
}

/// Classification result with the action-scale diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub kind: RegimeKind,
    pub hall_parameter: f64,
    /// `|sigma_H * S_cs| / hbar`: order unity marks the quantum regime,
    /// large values the classical one.
    pub action_ratio: f64,
}

/// Zero-field Drude conductivity `e^2 n tau / mass`.
pub fn drude_sigma0(p: &PhysicalParams) -> f64 {
    p.e * p.e * p.density * p.tau / p.mass
}

/// Drude tensor at finite field:
/// `sigma_L = sigma_0 / (1 + x^2)`, `sigma_H = sigma_0 x / (1 + x^2)`
/// with `x = omega_c tau`.
pub fn conductivity_classical(p: &PhysicalParams) -> ConductivityTensor {
    let x = hall_parameter(p);
    let sigma0 = drude_sigma0(p);
    let denom = 1.0 + x * x;
    ConductivityTensor {
        longitudinal: sigma0 / denom,
        hall: sigma0 * x / denom,
    }
}

/// Strong-field limit: `sigma_H = n e / B`, `sigma_L = 0`.
pub fn conductivity_quantum_limit(p: &PhysicalParams) -> Result<ConductivityTensor> {
    if p.b_field == 0.0 {
        return Err(CoreError::ZeroFieldQuantumLimit);
    }
    Ok(ConductivityTensor {
        longitudinal: 0.0,
        hall: p.density * p.e / p.b_field,
    })
}

/// Classify by Hall parameter; the gauge-action scale is reported as a
/// diagnostic ratio alongside.
pub fn classify_regime(
    p: &PhysicalParams,
    s_cs: f64,
    thresholds: &RegimeThresholds,
) -> Result<Regime> {
    if thresholds.classical >= thresholds.quantum {
        return Err(CoreError::InvalidParameter {
            name: "thresholds",
            reason: format!(
                "classical threshold {} must lie below quantum threshold {}",
                thresholds.classical, thresholds.quantum
            ),
        });
    }
    let x = hall_parameter(p);
    let sigma_h = conductivity_classical(p).hall;
    let kind = if x >= thresholds.quantum {
        RegimeKind::Quantum
    } else if x <= thresholds.classical {
        RegimeKind::Classical
    } else {
        RegimeKind::Crossover
    };
    Ok(Regime {
        kind,
        hall_parameter: x,
        action_ratio: (sigma_h * s_cs / p.hbar).abs(),
    })
}

/// One row of a plateau staircase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircasePoint {
    pub b_field: f64,
    pub sigma_h_continuous: f64,
    pub sigma_h_quantized: u32,
}

/// Continuous `n e / B` filling and its integer plateau assignment over
/// a field sweep. Any non-positive field is rejected.
pub fn plateau_staircase(p_base: &PhysicalParams, sweep: &[f64]) -> Result<Vec<StaircasePoint>> {
    if sweep.is_empty() {
        return Err(CoreError::EmptySweep);
    }
    sweep
        .iter()
        .map(|&b| {
            if !b.is_finite() || b <= 0.0 {
                return Err(CoreError::InvalidParameter {
                    name: "B",
                    reason: format!("staircase requires strictly positive fields, got {b}"),
                });
            }
            let continuous = p_base.density * p_base.e / b;
            Ok(StaircasePoint {
                b_field: b,
                sigma_h_continuous: continuous,
                sigma_h_quantized: snap_sigma_h(continuous)?,
            })
        })
        .collect()
}

/// Which base parameter realizes a Hall-parameter sweep.
///
/// `Field` varies B at fixed tau: `sigma_0` stays fixed and the Drude
/// Hall conductivity decays like `1/x`. `MeanFreeTime` varies tau at
/// fixed (n, B): the quantum-limit value `n e / B` stays fixed and the
/// Drude form converges to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepVariable {
    #[default]
    Field,
    MeanFreeTime,
}

/// One evaluated sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub b_field: f64,
    pub omega_c_tau: f64,
    pub sigma_l: f64,
    pub sigma_h: f64,
    pub sigma_h_quantized: u32,
    pub regime: RegimeKind,
}

/// Evaluate the Drude tensor, plateau assignment, and regime over a
/// sweep of the chosen variable. Pure and order-independent: entry `k`
/// depends only on `values[k]`.
pub fn sweep_conductivities(
    p_base: &PhysicalParams,
    values: &[f64],
    variable: SweepVariable,
    thresholds: &RegimeThresholds,
) -> Result<Vec<SweepRecord>> {
    if values.is_empty() {
        return Err(CoreError::EmptySweep);
    }
    values
        .iter()
        .map(|&v| {
            if !v.is_finite() || v <= 0.0 {
                return Err(CoreError::InvalidParameter {
                    name: "sweep value",
                    reason: format!("must be strictly positive, got {v}"),
                });
            }
            let p = match variable {
                SweepVariable::Field => p_base.with_b_field(v),
                SweepVariable::MeanFreeTime => p_base.with_tau(v),
            };
            let tensor = conductivity_classical(&p);
            let filling = p.density * p.e / p.b_field;
            Ok(SweepRecord {
                b_field: p.b_field,
                omega_c_tau: hall_parameter(&p),
                sigma_l: tensor.longitudinal,
                sigma_h: tensor.hall,
                sigma_h_quantized: snap_sigma_h(filling)?,
                regime: classify_regime(&p, 0.0, thresholds)?.kind,
            })
        })
        .collect()
}
