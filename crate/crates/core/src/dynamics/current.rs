//! Current densities and Ohm-law residual diagnostics.
//!
//! Two current definitions are carried side by side: the minimally
//! coupled one including the gauge term (used in the strong-field
//! regime) and the free one (its zero-field limit). Both are evaluated
//! with central differences on interior nodes and are zero on the
//! boundary ring, where the wavefunction vanishes.

use crate::dynamics::state::LatticeState;
use crate::grid::{dcx_c, dcy_c, div_central, Grid2D, RealField};
use crate::params::PhysicalParams;
use crate::transport::ConductivityTensor;

/// Which current definition a field was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentTag {
    /// `j_m = (e hbar / m) Im(psi* d_m psi) - (e^2 / m) A_m |psi|^2`.
    WithGaugeTerm,
    /// `j_m = (e hbar / m) Im(psi* d_m psi)` (the B -> 0 form).
    Free,
}

/// Charge current density on the nodes.
#[derive(Debug, Clone)]
pub struct CurrentField {
    pub j1: RealField,
    pub j2: RealField,
    pub tag: CurrentTag,
}

impl CurrentField {
    pub fn magnitude(&self, k: usize) -> f64 {
        self.j1[k].hypot(self.j2[k])
    }

    pub fn inf_norm(&self, g: &Grid2D, margin: usize) -> f64 {
        g.nodes_with_margin(margin)
            .map(|(i, j)| self.magnitude(g.idx(i, j)))
            .fold(0.0, f64::max)
    }
}

/// Evaluate the selected current definition on the interior.
pub fn current_density(s: &LatticeState, p: &PhysicalParams, tag: CurrentTag) -> CurrentField {
    current_density_of(&s.grid, &s.psi, &s.a1, &s.a2, p, tag)
}

/// Same, from raw field components (used when diagnosing stored slices).
pub fn current_density_of(
    g: &Grid2D,
    psi: &[num_complex::Complex64],
    a1: &[f64],
    a2: &[f64],
    p: &PhysicalParams,
    tag: CurrentTag,
) -> CurrentField {
    let n = g.n_nodes();
    let mut j1 = vec![0.0; n];
    let mut j2 = vec![0.0; n];
    let phase_coeff = p.e * p.hbar / p.mass;
    let gauge_coeff = p.e * p.e / p.mass;
    for (i, jy) in g.interior() {
        let k = g.idx(i, jy);
        let center = psi[k];
        let gx = dcx_c(g, psi, i, jy);
        let gy = dcy_c(g, psi, i, jy);
        let mut jx = phase_coeff * (center.conj() * gx).im;
        let mut jyv = phase_coeff * (center.conj() * gy).im;
        if tag == CurrentTag::WithGaugeTerm {
            let dens = center.norm_sqr();
            jx -= gauge_coeff * a1[k] * dens;
            jyv -= gauge_coeff * a2[k] * dens;
        }
        j1[k] = jx;
        j2[k] = jyv;
    }
    CurrentField { j1, j2, tag }
}

/// Hall-term rotation `(eps E)_1 = E_2`, `(eps E)_2 = -E_1`, matching
/// the off-diagonal sign of [`ConductivityTensor::apply`]. `sign`
/// selects the overall convention.
#[inline]
pub fn eps_rotate(e1: f64, e2: f64, sign: f64) -> (f64, f64) {
    (sign * e2, -sign * e1)
}

/// Ohm residual outcome. When the current vanishes identically the
/// residual is reported unnormalized and flagged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhmResidual {
    /// Normalized by the current sup-norm, or equal to `absolute` when
    /// the zero-current flag is set.
    pub residual: f64,
    /// Plain sup-norm of the defect field.
    pub absolute: f64,
    pub zero_current: bool,
    /// Hall-term sign convention the residual was evaluated with.
    pub eps_sign: f64,
}

/// Sup-norm residual of `j = sigma_L E + sigma_H eps E` over nodes at
/// ring distance `>= margin`, normalized by the current sup-norm.
pub fn ohm_residual_classical(
    g: &Grid2D,
    j: &CurrentField,
    e1: &[f64],
    e2: &[f64],
    sigma: &ConductivityTensor,
    eps_sign: f64,
    margin: usize,
) -> OhmResidual {
    let mut worst = 0.0f64;
    let mut jmax = 0.0f64;
    for (i, jy) in g.nodes_with_margin(margin) {
        let k = g.idx(i, jy);
        let (hx, hy) = eps_rotate(e1[k], e2[k], eps_sign);
        let rx = j.j1[k] - sigma.longitudinal * e1[k] - sigma.hall * hx;
        let ry = j.j2[k] - sigma.longitudinal * e2[k] - sigma.hall * hy;
        worst = worst.max(rx.abs()).max(ry.abs());
        jmax = jmax.max(j.magnitude(k));
    }
    if jmax == 0.0 {
        OhmResidual {
            residual: worst,
            absolute: worst,
            zero_current: true,
            eps_sign,
        }
    } else {
        OhmResidual {
            residual: worst / jmax,
            absolute: worst,
            zero_current: false,
            eps_sign,
        }
    }
}

/// Classical Ohm residual minimized over the two Hall-sign conventions.
pub fn ohm_residual_classical_best(
    g: &Grid2D,
    j: &CurrentField,
    e1: &[f64],
    e2: &[f64],
    sigma: &ConductivityTensor,
    margin: usize,
) -> OhmResidual {
    let plus = ohm_residual_classical(g, j, e1, e2, sigma, 1.0, margin);
    let minus = ohm_residual_classical(g, j, e1, e2, sigma, -1.0, margin);
    if plus.residual <= minus.residual {
        plus
    } else {
        minus
    }
}

/// Quantum-regime Hall residual `j = sigma_H eps E` (no longitudinal
/// channel), same normalization and sign handling.
pub fn hall_residual(
    g: &Grid2D,
    j: &CurrentField,
    e1: &[f64],
    e2: &[f64],
    sigma_h: f64,
    eps_sign: f64,
    margin: usize,
) -> OhmResidual {
    let sigma = ConductivityTensor {
        longitudinal: 0.0,
        hall: sigma_h,
    };
    ohm_residual_classical(g, j, e1, e2, &sigma, eps_sign, margin)
}

pub fn hall_residual_best(
    g: &Grid2D,
    j: &CurrentField,
    e1: &[f64],
    e2: &[f64],
    sigma_h: f64,
    margin: usize,
) -> OhmResidual {
    let plus = hall_residual(g, j, e1, e2, sigma_h, 1.0, margin);
    let minus = hall_residual(g, j, e1, e2, sigma_h, -1.0, margin);
    if plus.residual <= minus.residual {
        plus
    } else {
        minus
    }
}

/// Cosine similarity of the current with the E field (longitudinal
/// fraction) over the measurement region; zero when either vanishes.
pub fn longitudinal_fraction_of(
    g: &Grid2D,
    j: &CurrentField,
    e1: &[f64],
    e2: &[f64],
    margin: usize,
) -> f64 {
    let mut je = 0.0;
    let mut jj = 0.0;
    let mut ee = 0.0;
    for (i, jy) in g.nodes_with_margin(margin) {
        let k = g.idx(i, jy);
        je += j.j1[k] * e1[k] + j.j2[k] * e2[k];
        jj += j.j1[k] * j.j1[k] + j.j2[k] * j.j2[k];
        ee += e1[k] * e1[k] + e2[k] * e2[k];
    }
    if jj == 0.0 || ee == 0.0 {
        0.0
    } else {
        (je / (jj.sqrt() * ee.sqrt())).abs()
    }
}

/// Cosine similarity of the current with the rotated field `eps E`
/// (Hall fraction), independent of the sign convention.
pub fn hall_fraction_of(g: &Grid2D, j: &CurrentField, e1: &[f64], e2: &[f64], margin: usize) -> f64 {
    let mut jh = 0.0;
    let mut jj = 0.0;
    let mut hh = 0.0;
    for (i, jy) in g.nodes_with_margin(margin) {
        let k = g.idx(i, jy);
        let (hx, hy) = eps_rotate(e1[k], e2[k], 1.0);
        jh += j.j1[k] * hx + j.j2[k] * hy;
        jj += j.j1[k] * j.j1[k] + j.j2[k] * j.j2[k];
        hh += hx * hx + hy * hy;
    }
    if jj == 0.0 || hh == 0.0 {
        0.0
    } else {
        (jh / (jj.sqrt() * hh.sqrt())).abs()
    }
}

/// Discrete continuity residual
/// `e d_t |psi|^2 + div j` with a centered time difference between two
/// bracketing states and the current evaluated at the middle state.
/// Returns the sup norm over nodes at ring distance `>= margin`.
pub fn continuity_residual(
    before: &LatticeState,
    mid_current: &CurrentField,
    after: &LatticeState,
    p: &PhysicalParams,
    dt: f64,
    margin: usize,
) -> f64 {
    let g = before.grid;
    let div = div_central(&g, &mid_current.j1, &mid_current.j2);
    let mut worst = 0.0f64;
    for (i, j) in g.nodes_with_margin(margin.max(1)) {
        let k = g.idx(i, j);
        let ddt = p.e * (after.psi[k].norm_sqr() - before.psi[k].norm_sqr()) / (2.0 * dt);
        worst = worst.max((ddt + div[k]).abs());
    }
    worst
}
