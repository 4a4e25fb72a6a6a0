//! Gauge-sector action evaluated as a diagnostic scalar.

use crate::error::CoreError;
use crate::grid::{Grid2D, RealField};
use crate::Result;
use std::f64::consts::PI;

/// Action value together with its scale relative to the quantum of
/// action: ratios of order one mark the quantum regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsAction {
    pub value: f64,
    pub action_ratio: f64,
}

/// Evaluate `-(sigma_H / 8 pi) \int dt \int eps^{mn} Adot_m A_n` over a
/// stored history of gauge-field slices a time step `dt` apart:
/// trapezoid in time (with centered time derivatives inside, one-sided
/// at the ends) and trapezoid-weighted node sums in space. The spatial
/// convention is `eps^{12} = +1`, i.e. the integrand is
/// `Adot_1 A_2 - Adot_2 A_1`; swapping the field labels flips the sign.
pub fn chern_simons_action(
    g: &Grid2D,
    a1_slices: &[RealField],
    a2_slices: &[RealField],
    dt: f64,
    sigma_h: f64,
    hbar: f64,
) -> Result<CsAction> {
    let m = a1_slices.len();
    if m < 2 || a2_slices.len() != m {
        return Err(CoreError::TooFewSlices {
            need: 2,
            have: m.min(a2_slices.len()),
        });
    }
    let cell = g.spacing * g.spacing;
    let mut integrand = vec![0.0f64; m];
    for k in 0..m {
        // Time derivative of each component at slice k.
        let (prev, next, denom) = if k == 0 {
            (0, 1, dt)
        } else if k == m - 1 {
            (m - 2, m - 1, dt)
        } else {
            (k - 1, k + 1, 2.0 * dt)
        };
        let mut sum = 0.0;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let idx = g.idx(i, j);
                let adot1 = (a1_slices[next][idx] - a1_slices[prev][idx]) / denom;
                let adot2 = (a2_slices[next][idx] - a2_slices[prev][idx]) / denom;
                sum += g.quad_weight(i, j)
                    * (adot1 * a2_slices[k][idx] - adot2 * a1_slices[k][idx]);
            }
        }
        integrand[k] = sum * cell;
    }
    // Trapezoid in time.
    let mut time_integral = 0.0;
    for k in 0..m - 1 {
        time_integral += 0.5 * dt * (integrand[k] + integrand[k + 1]);
    }
    let value = -sigma_h / (8.0 * PI) * time_integral;
    Ok(CsAction {
        value,
        action_ratio: (sigma_h * value / hbar).abs(),
    })
}

/// Midpoint-rule increment of the same integral between two consecutive
/// slices, used for running accumulation during a simulation. Equals
/// the full evaluation for fields linear in time.
pub fn chern_simons_increment(
    g: &Grid2D,
    a1_prev: &[f64],
    a2_prev: &[f64],
    a1_next: &[f64],
    a2_next: &[f64],
    sigma_h: f64,
) -> f64 {
    let cell = g.spacing * g.spacing;
    let mut sum = 0.0;
    for j in 0..g.ny {
        for i in 0..g.nx {
            let k = g.idx(i, j);
            let da1 = a1_next[k] - a1_prev[k];
            let da2 = a2_next[k] - a2_prev[k];
            let mid1 = 0.5 * (a1_next[k] + a1_prev[k]);
            let mid2 = 0.5 * (a2_next[k] + a2_prev[k]);
            sum += g.quad_weight(i, j) * (da1 * mid2 - da2 * mid1);
        }
    }
    -sigma_h / (8.0 * PI) * sum * cell
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn static_field_has_zero_action() {
        let g = Grid2D::new(10, 10, 0.4).unwrap();
        let n = g.n_nodes();
        let slice1 = vec![0.7; n];
        let slice2 = vec![-0.2; n];
        let a1 = vec![slice1.clone(), slice1.clone(), slice1];
        let a2 = vec![slice2.clone(), slice2.clone(), slice2];
        let s = chern_simons_action(&g, &a1, &a2, 0.1, 1.0, 1.0).unwrap();
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn linear_ramp_matches_closed_form() {
        // A1(t) = c t, A2 = d: S = -(sigma/8 pi) * T * c * d * Area.
        let g = Grid2D::new(16, 12, 0.3).unwrap();
        let n = g.n_nodes();
        let c = 0.8;
        let d = -0.5;
        let dt = 0.05;
        let steps = 21;
        let mut a1 = Vec::new();
        let mut a2 = Vec::new();
        for k in 0..steps {
            a1.push(vec![c * dt * k as f64; n]);
            a2.push(vec![d; n]);
        }
        let total_t = dt * (steps - 1) as f64;
        let sigma_h = 2.0;
        let s = chern_simons_action(&g, &a1, &a2, dt, sigma_h, 1.0).unwrap();
        let expected = -sigma_h / (8.0 * PI) * total_t * c * d * g.area();
        assert_relative_eq!(s.value, expected, max_relative = 1e-6);
        assert_relative_eq!(s.action_ratio, (sigma_h * expected).abs(), max_relative = 1e-12);
        // Running accumulation agrees for linear fields.
        let mut acc = 0.0;
        for k in 0..steps - 1 {
            acc += chern_simons_increment(&g, &a1[k], &a2[k], &a1[k + 1], &a2[k + 1], sigma_h);
        }
        assert_relative_eq!(acc, expected, max_relative = 1e-10);
    }

    #[test]
    fn swapping_components_flips_sign() {
        let g = Grid2D::new(10, 10, 0.3).unwrap();
        let n = g.n_nodes();
        let mut a1 = Vec::new();
        let mut a2 = Vec::new();
        for k in 0..5 {
            let t = k as f64 * 0.1;
            a1.push((0..n).map(|q| 0.3 * t + 0.01 * q as f64).collect());
            a2.push((0..n).map(|q| -0.2 * t * t + 0.02 * (q % 7) as f64).collect());
        }
        let fwd = chern_simons_action(&g, &a1, &a2, 0.1, 1.0, 1.0).unwrap();
        let swapped = chern_simons_action(&g, &a2, &a1, 0.1, 1.0, 1.0).unwrap();
        assert_relative_eq!(fwd.value, -swapped.value, max_relative = 1e-12);
    }

    #[test]
    fn too_few_slices_rejected() {
        let g = Grid2D::new(10, 10, 0.3).unwrap();
        let a = vec![vec![0.0; g.n_nodes()]];
        assert!(matches!(
            chern_simons_action(&g, &a, &a, 0.1, 1.0, 1.0),
            Err(CoreError::TooFewSlices { .. })
        ));
    }
}
