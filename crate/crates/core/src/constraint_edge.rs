//! Gauss-law constraint diagnostics, discrete Helmholtz splitting of the
//! gauge field, and edge-current profiling against the magnetic length.
//!
//! Index conventions: with `eps_21 = +1 = -eps_12` throughout, the
//! constraint combination `eps^{mn} d_m A_n` equals minus the standard
//! curl `d1 A2 - d2 A1`, while the field strength `B := eps_{nm} d_m A_n`
//! equals the standard curl. The constraint residual is therefore
//! `sigma_H curl(A) - e |psi|^2`, and a uniform-field configuration with
//! `|psi|^2 = sigma_H B0 / e` satisfies it identically.

use crate::dynamics::current::CurrentField;
use crate::dynamics::state::LatticeState;
use crate::error::CoreError;
use crate::grid::{curl_central, div_backward, grad_forward, interior_mean, Grid2D, RealField};
use crate::params::{magnetic_length, PhysicalParams};
use crate::Result;

/// Relative tolerance of the Poisson solve inside the Helmholtz split.
pub const POISSON_TOL: f64 = 1e-10;

/// Constraint diagnostics for one state snapshot.
#[derive(Debug, Clone)]
pub struct ConstraintReport {
    /// `sigma_H curl(A) - e |psi|^2` on interior nodes (zero elsewhere).
    pub residual_field: RealField,
    pub residual_inf: f64,
    pub residual_mean_abs: f64,
    /// `n e / B` from spatial means; absent when the mean field is zero.
    pub integrated_sigma: Option<f64>,
    /// `||curl part of A|| / ||A||`; zero for a pure-gauge field.
    pub pure_gauge_fraction: f64,
}

/// Pointwise Gauss-law residual with central differences, plus the
/// integrated and Helmholtz diagnostics.
pub fn gauss_residual(
    s: &LatticeState,
    p: &PhysicalParams,
    sigma_h: f64,
) -> Result<ConstraintReport> {
    let g = s.grid;
    let mut field = vec![0.0; g.n_nodes()];
    let mut inf = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut count = 0usize;
    for (i, j) in g.interior() {
        let k = g.idx(i, j);
        let r = sigma_h * curl_central(&g, &s.a1, &s.a2, i, j) - p.e * s.psi[k].norm_sqr();
        field[k] = r;
        inf = inf.max(r.abs());
        sum_abs += r.abs();
        count += 1;
    }
    let split = helmholtz_split(&g, &s.a1, &s.a2)?;
    let a_norm: f64 = s
        .a1
        .iter()
        .zip(&s.a2)
        .map(|(x, y)| x * x + y * y)
        .sum::<f64>()
        .sqrt();
    let curl_norm: f64 = split
        .curl1
        .iter()
        .zip(&split.curl2)
        .map(|(x, y)| x * x + y * y)
        .sum::<f64>()
        .sqrt();
    let pure_gauge_fraction = if a_norm == 0.0 { 0.0 } else { curl_norm / a_norm };
    let integrated_sigma = integrated_constraint(s, p, sigma_h)
        .ok()
        .map(|r| r.sigma_implied);
    Ok(ConstraintReport {
        residual_field: field,
        residual_inf: inf,
        residual_mean_abs: sum_abs / count.max(1) as f64,
        integrated_sigma,
        pure_gauge_fraction,
    })
}

/// Spatially integrated constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratedConstraint {
    pub n_bar: f64,
    pub b_bar: f64,
    pub sigma_implied: f64,
    /// `|sigma_implied - sigma_H| / sigma_H`.
    pub deviation: f64,
}

/// Means over interior nodes: `n_bar` of the density, `b_bar` of the
/// field strength; `sigma_implied = n_bar e / b_bar`.
pub fn integrated_constraint(
    s: &LatticeState,
    p: &PhysicalParams,
    sigma_h: f64,
) -> Result<IntegratedConstraint> {
    let g = s.grid;
    let dens: Vec<f64> = s.psi.iter().map(|c| c.norm_sqr()).collect();
    let n_bar = interior_mean(&g, &dens);
    let mut curl = vec![0.0; g.n_nodes()];
    for (i, j) in g.interior() {
        curl[g.idx(i, j)] = curl_central(&g, &s.a1, &s.a2, i, j);
    }
    let b_bar = interior_mean(&g, &curl);
    if b_bar == 0.0 {
        return Err(CoreError::ZeroMeanField);
    }
    let sigma_implied = n_bar * p.e / b_bar;
    let deviation = if sigma_h != 0.0 {
        (sigma_implied - sigma_h).abs() / sigma_h.abs()
    } else {
        sigma_implied.abs()
    };
    Ok(IntegratedConstraint {
        n_bar,
        b_bar,
        sigma_implied,
        deviation,
    })
}

/// Gradient/curl decomposition of a gauge field.
#[derive(Debug, Clone)]
pub struct HelmholtzSplit {
    pub lambda: RealField,
    pub grad1: RealField,
    pub grad2: RealField,
    pub curl1: RealField,
    pub curl2: RealField,
    pub iterations: usize,
    pub solver_residual: f64,
}

/// Solve `lap lambda = div A` with `lambda = 0` on the boundary and
/// split `A = grad lambda + (A - grad lambda)`. The divergence is the
/// backward difference and the gradient the forward difference, whose
/// composition is exactly the 5-point Laplacian, so pure-gradient
/// inputs built with the same gradient are recovered to solver
/// tolerance. Reconstruction `grad + curl = A` is exact by construction.
pub fn helmholtz_split(g: &Grid2D, a1: &[f64], a2: &[f64]) -> Result<HelmholtzSplit> {
    let rhs = div_backward(g, a1, a2);
    let (lambda, iterations, solver_residual) = poisson_dirichlet(g, &rhs)?;
    let (grad1, grad2) = grad_forward(g, &lambda);
    let n = g.n_nodes();
    let mut curl1 = vec![0.0; n];
    let mut curl2 = vec![0.0; n];
    for k in 0..n {
        curl1[k] = a1[k] - grad1[k];
        curl2[k] = a2[k] - grad2[k];
    }
    Ok(HelmholtzSplit {
        lambda,
        grad1,
        grad2,
        curl1,
        curl2,
        iterations,
        solver_residual,
    })
}

/// Conjugate gradients on the (negated) 5-point Dirichlet Laplacian.
/// Returns the solution on all nodes (zero boundary), the iteration
/// count, and the final relative residual.
fn poisson_dirichlet(g: &Grid2D, rhs: &[f64]) -> Result<(RealField, usize, f64)> {
    let n = g.n_nodes();
    let inv_a2 = 1.0 / (g.spacing * g.spacing);
    let interior: Vec<(usize, usize)> = g.interior().collect();

    // y = -lap x on interior nodes, boundary values read as zero.
    let apply = |x: &[f64], out: &mut [f64]| {
        for &(i, j) in &interior {
            let k = g.idx(i, j);
            out[k] = (4.0 * x[k]
                - x[g.idx(i + 1, j)]
                - x[g.idx(i - 1, j)]
                - x[g.idx(i, j + 1)]
                - x[g.idx(i, j - 1)])
                * inv_a2;
        }
    };

    // Solve (-lap) lambda = -rhs.
    let b: Vec<f64> = rhs.iter().map(|v| -v).collect();
    let b_norm = interior
        .iter()
        .map(|&(i, j)| b[g.idx(i, j)] * b[g.idx(i, j)])
        .sum::<f64>()
        .sqrt();
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok((x, 0, 0.0));
    }
    let mut r = b.clone();
    for j in 0..g.ny {
        for i in 0..g.nx {
            if g.is_boundary(i, j) {
                r[g.idx(i, j)] = 0.0;
            }
        }
    }
    let mut d = r.clone();
    let mut tmp = vec![0.0; n];
    let dot = |u: &[f64], v: &[f64]| -> f64 {
        interior
            .iter()
            .map(|&(i, j)| u[g.idx(i, j)] * v[g.idx(i, j)])
            .sum()
    };
    let mut rs_old = dot(&r, &r);
    let cap = 10 * g.nx * g.ny;
    let mut iterations = 0;
    while rs_old.sqrt() > POISSON_TOL * b_norm {
        if iterations >= cap {
            return Err(CoreError::SolverDiverged {
                max_iter: cap,
                residual: rs_old.sqrt() / b_norm,
            });
        }
        apply(&d, &mut tmp);
        let alpha = rs_old / dot(&d, &tmp);
        for &(i, j) in &interior {
            let k = g.idx(i, j);
            x[k] += alpha * d[k];
            r[k] -= alpha * tmp[k];
        }
        let rs_new = dot(&r, &r);
        let beta = rs_new / rs_old;
        for &(i, j) in &interior {
            let k = g.idx(i, j);
            d[k] = r[k] + beta * d[k];
        }
        rs_old = rs_new;
        iterations += 1;
    }
    Ok((x, iterations, rs_old.sqrt() / b_norm))
}

/// Current magnitude binned by distance to the boundary.
#[derive(Debug, Clone)]
pub struct EdgeProfile {
    /// Bin centers: ring distance in physical units, strictly increasing.
    pub distances: Vec<f64>,
    /// Fraction of the total current magnitude per bin (sums to 1).
    pub current_mass: Vec<f64>,
    /// Mean |j| per node in each bin (the decay fit runs on this).
    pub mean_magnitude: Vec<f64>,
    /// Decay length from a log-linear least-squares fit over the first
    /// decade below the peak bin; 0 when fewer than two bins qualify,
    /// infinite for non-decaying profiles.
    pub fitted_width: f64,
    pub l_b: f64,
}

/// Bin `|j|` by Chebyshev ring distance and fit the decay width.
pub fn edge_profile(j: &CurrentField, s: &LatticeState, p: &PhysicalParams) -> Result<EdgeProfile> {
    let g = s.grid;
    let l_b = magnetic_length(p)?;
    let n_bins = g.max_ring() + 1;
    let mut mass = vec![0.0f64; n_bins];
    let mut count = vec![0usize; n_bins];
    for jy in 0..g.ny {
        for i in 0..g.nx {
            let r = g.ring(i, jy);
            mass[r] += j.magnitude(g.idx(i, jy));
            count[r] += 1;
        }
    }
    let total: f64 = mass.iter().sum();
    if total == 0.0 {
        return Err(CoreError::NoCurrent);
    }
    let distances: Vec<f64> = (0..n_bins).map(|r| r as f64 * g.spacing).collect();
    let mean_magnitude: Vec<f64> = mass
        .iter()
        .zip(&count)
        .map(|(&m, &c)| if c > 0 { m / c as f64 } else { 0.0 })
        .collect();
    let current_mass: Vec<f64> = mass.iter().map(|&m| m / total).collect();
    let fitted_width = fit_decay_width(&distances, &mean_magnitude);
    Ok(EdgeProfile {
        distances,
        current_mass,
        mean_magnitude,
        fitted_width,
        l_b,
    })
}

/// Least-squares slope of `log(mean)` against distance over the first
/// decade of decay past the peak bin.
fn fit_decay_width(distances: &[f64], mean: &[f64]) -> f64 {
    let peak_idx = mean
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(k, _)| k)
        .unwrap_or(0);
    let peak = mean[peak_idx];
    if peak <= 0.0 {
        return 0.0;
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in peak_idx..mean.len() {
        if mean[k] <= 0.0 {
            break;
        }
        xs.push(distances[k]);
        ys.push(mean[k].ln());
        if mean[k] < peak / 10.0 {
            break; // one decade covered
        }
    }
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|v| v * v).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return 0.0;
    }
    let slope = (n * sxy - sx * sy) / denom;
    if slope >= -f64::EPSILON {
        f64::INFINITY
    } else {
        -1.0 / slope
    }
}

/// Fraction of the current mass within one magnetic length of the edge.
pub fn edge_current_fraction(profile: &EdgeProfile) -> f64 {
    profile
        .distances
        .iter()
        .zip(&profile.current_mass)
        .filter(|(d, _)| **d <= profile.l_b)
        .map(|(_, m)| m)
        .sum()
}

/// Breakdown indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakdownCheck {
    pub breakdown: bool,
    /// `||gauss residual||_inf / (e n_bar)`.
    pub ratio: f64,
    /// Set when there is no charge to compare against.
    pub vacuous: bool,
}

/// True when the constraint violation is large relative to the charge
/// density, signaling that the pure-gauge reading no longer holds.
pub fn breakdown_check(
    s: &LatticeState,
    p: &PhysicalParams,
    sigma_h: f64,
    threshold: f64,
) -> Result<BreakdownCheck> {
    let report = gauss_residual(s, p, sigma_h)?;
    let n_bar = s.mean_density();
    if n_bar == 0.0 {
        return Ok(BreakdownCheck {
            breakdown: false,
            ratio: 0.0,
            vacuous: true,
        });
    }
    let ratio = report.residual_inf / (p.e * n_bar);
    Ok(BreakdownCheck {
        breakdown: ratio > threshold,
        ratio,
        vacuous: false,
    })
}

/// Uniform-field exact solution of the constraint: symmetric-gauge
/// potentials of strength `b0` about the domain center and the matching
/// uniform interior density `sigma_h b0 / e`.
pub fn uniform_field_state(g: Grid2D, p: &PhysicalParams, sigma_h: f64, b0: f64) -> LatticeState {
    let mut s = LatticeState::zeros(g);
    let xc = 0.5 * g.lx();
    let yc = 0.5 * g.ly();
    for j in 0..g.ny {
        for i in 0..g.nx {
            let k = g.idx(i, j);
            s.a1[k] = -0.5 * b0 * (g.y(j) - yc);
            s.a2[k] = 0.5 * b0 * (g.x(i) - xc);
        }
    }
    let amp = (sigma_h * b0 / p.e).sqrt();
    for (i, j) in g.interior().collect::<Vec<_>>() {
        s.psi[g.idx(i, j)] = num_complex::Complex64::new(amp, 0.0);
    }
    s
}

/// Smoothly curved exact solution: field strength
/// `B(x, y) = b0 (1 + mod * sin(2 pi x / Lx) sin(2 pi y / Ly))` realized
/// through `A = (0, \int B dx)` with the matching local density. The
/// central-difference residual of this state is O(a^2).
pub fn curved_field_state(
    g: Grid2D,
    p: &PhysicalParams,
    sigma_h: f64,
    b0: f64,
    modulation: f64,
) -> LatticeState {
    let mut s = LatticeState::zeros(g);
    let lx = g.lx();
    let ly = g.ly();
    let wx = std::f64::consts::TAU / lx;
    let wy = std::f64::consts::TAU / ly;
    for j in 0..g.ny {
        for i in 0..g.nx {
            let k = g.idx(i, j);
            let x = g.x(i);
            let y = g.y(j);
            // A2 = b0 (x + mod/wx (1 - cos(wx x)) sin(wy y)), A1 = 0:
            // curl = d1 A2 = b0 (1 + mod sin(wx x) sin(wy y)).
            s.a2[k] = b0 * (x + modulation / wx * (1.0 - (wx * x).cos()) * (wy * y).sin());
            let b_local = b0 * (1.0 + modulation * (wx * x).sin() * (wy * y).sin());
            if !g.is_boundary(i, j) {
                let dens = (sigma_h * b_local / p.e).max(0.0);
                s.psi[k] = num_complex::Complex64::new(dens.sqrt(), 0.0);
            }
        }
    }
    s
}
