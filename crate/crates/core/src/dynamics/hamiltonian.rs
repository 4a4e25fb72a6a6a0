//! Minimally coupled lattice Hamiltonian and wavefunction steppers.
//!
//! `H psi = (1/2m) [ -hbar^2 lap psi + i hbar e (d(A psi) + A d psi)
//!                   + e^2 |A|^2 psi ]`
//! with second-order central differences and a Dirichlet (psi = 0)
//! boundary ring. The cross term is the symmetrized product of the
//! antisymmetric central-difference operator with the real multiplication
//! operator, so the discrete Hamiltonian is Hermitian and the
//! Crank-Nicolson update is unitary up to solver tolerance.

use num_complex::Complex64;

use crate::dynamics::state::LatticeState;
use crate::error::CoreError;
use crate::grid::{ComplexField, Grid2D};
use crate::params::PhysicalParams;
use crate::Result;

/// Choice of time integrator for the wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsiStepper {
    /// Implicit midpoint (Cayley) step: unconditionally stable and
    /// norm-preserving to solver tolerance.
    #[default]
    CrankNicolson,
    /// Classic explicit four-stage step; subject to the stability bound.
    Rk4,
}

/// Relative tolerance of the inner conjugate-gradient solve.
pub const CN_SOLVER_TOL: f64 = 1e-13;
const CN_MAX_ITER: usize = 2000;

/// Apply the Hamiltonian with the gauge fields frozen. Boundary output
/// nodes are zero.
pub fn apply_hamiltonian(
    g: &Grid2D,
    p: &PhysicalParams,
    a1: &[f64],
    a2: &[f64],
    psi: &[Complex64],
    out: &mut [Complex64],
) {
    let a = g.spacing;
    let inv_a2 = 1.0 / (a * a);
    let inv_2a = 1.0 / (2.0 * a);
    let hb = p.hbar;
    let e = p.e;
    let half_inv_mass = 0.5 / p.mass;

    out.fill(Complex64::new(0.0, 0.0));
    for j in 1..g.ny - 1 {
        for i in 1..g.nx - 1 {
            let k = g.idx(i, j);
            let kxp = g.idx(i + 1, j);
            let kxm = g.idx(i - 1, j);
            let kyp = g.idx(i, j + 1);
            let kym = g.idx(i, j - 1);

            let lap = (psi[kxp] + psi[kxm] + psi[kyp] + psi[kym] - 4.0 * psi[k]) * inv_a2;

            // d(A psi) + A d psi, central differences in each direction.
            let cross_x = (a1[kxp] * psi[kxp] - a1[kxm] * psi[kxm]) * inv_2a
                + a1[k] * (psi[kxp] - psi[kxm]) * inv_2a;
            let cross_y = (a2[kyp] * psi[kyp] - a2[kym] * psi[kym]) * inv_2a
                + a2[k] * (psi[kyp] - psi[kym]) * inv_2a;

            let a_sq = a1[k] * a1[k] + a2[k] * a2[k];

            out[k] = half_inv_mass
                * (-hb * hb * lap
                    + Complex64::new(0.0, hb * e) * (cross_x + cross_y)
                    + e * e * a_sq * psi[k]);
        }
    }
}

/// Largest admissible time step for the explicit stepper.
pub fn stability_bound(g: &Grid2D, p: &PhysicalParams, stability_factor: f64) -> f64 {
    stability_factor * p.mass * g.spacing * g.spacing / p.hbar
}

/// Smallest eigenvalue of the discrete Dirichlet kinetic Hamiltonian
/// (zero gauge field): the ground-mode energy of the particle in the
/// box at this resolution.
pub fn dirichlet_ground_energy(g: &Grid2D, p: &PhysicalParams) -> f64 {
    let a2 = g.spacing * g.spacing;
    let lx = std::f64::consts::PI / (g.nx - 1) as f64;
    let ly = std::f64::consts::PI / (g.ny - 1) as f64;
    let lam = (2.0 - 2.0 * lx.cos() + 2.0 - 2.0 * ly.cos()) / a2;
    p.hbar * p.hbar * lam / (2.0 * p.mass)
}

/// The matching ground eigenvector `sin(pi i/(nx-1)) sin(pi j/(ny-1))`.
pub fn dirichlet_ground_mode(g: &Grid2D) -> ComplexField {
    let mut psi = vec![Complex64::new(0.0, 0.0); g.n_nodes()];
    for j in 0..g.ny {
        for i in 0..g.nx {
            let sx = (std::f64::consts::PI * i as f64 / (g.nx - 1) as f64).sin();
            let sy = (std::f64::consts::PI * j as f64 / (g.ny - 1) as f64).sin();
            psi[g.idx(i, j)] = Complex64::new(sx * sy, 0.0);
        }
    }
    psi
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    dot(x, x).re.sqrt()
}

/// Scratch buffers reused across steps.
#[derive(Debug, Clone)]
pub struct PsiWorkspace {
    buf: [ComplexField; 6],
}

impl PsiWorkspace {
    pub fn new(g: &Grid2D) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); g.n_nodes()];
        Self {
            buf: [z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z],
        }
    }
}

/// Advance psi one step of `dt` under the Hamiltonian with the gauge
/// fields frozen. Errors are raised before any mutation.
pub fn step_psi(
    s: &mut LatticeState,
    p: &PhysicalParams,
    dt: f64,
    stepper: PsiStepper,
    stability_factor: f64,
    ws: &mut PsiWorkspace,
) -> Result<()> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(CoreError::InvalidParameter {
            name: "dt",
            reason: format!("must be positive and finite, got {dt}"),
        });
    }
    match stepper {
        PsiStepper::CrankNicolson => step_psi_crank_nicolson(s, p, dt, ws),
        PsiStepper::Rk4 => {
            let bound = stability_bound(&s.grid, p, stability_factor);
            if dt > bound {
                return Err(CoreError::StabilityBound { dt, bound });
            }
            step_psi_rk4(s, p, dt, ws);
            Ok(())
        }
    }
}

fn step_psi_crank_nicolson(
    s: &mut LatticeState,
    p: &PhysicalParams,
    dt: f64,
    ws: &mut PsiWorkspace,
) -> Result<()> {
    let g = s.grid;
    let r = dt / (2.0 * p.hbar);
    let ir = Complex64::new(0.0, r);
    let [h1, h2, rhs, res, dir, mdir] = &mut ws.buf;

    // c = (I - i r H) psi, rhs = (I - i r H) c; solve (I + r^2 H^2) x = rhs.
    apply_hamiltonian(&g, p, &s.a1, &s.a2, &s.psi, h1);
    for k in 0..g.n_nodes() {
        h2[k] = s.psi[k] - ir * h1[k]; // c
    }
    apply_hamiltonian(&g, p, &s.a1, &s.a2, h2, h1);
    for k in 0..g.n_nodes() {
        rhs[k] = h2[k] - ir * h1[k];
    }

    // CG on the normal operator M = I + r^2 H^2, which is Hermitian
    // positive definite with condition number 1 + (r lambda_max)^2.
    let apply_m = |x: &ComplexField, tmp: &mut ComplexField, out: &mut ComplexField| {
        apply_hamiltonian(&g, p, &s.a1, &s.a2, x, tmp);
        apply_hamiltonian(&g, p, &s.a1, &s.a2, tmp, out);
        for k in 0..x.len() {
            out[k] = x[k] + r * r * out[k];
        }
    };

    // Initial guess: the current psi.
    let mut x = s.psi.clone();
    apply_m(&x, h1, h2);
    for k in 0..g.n_nodes() {
        res[k] = rhs[k] - h2[k];
    }
    dir.copy_from_slice(res);
    let rhs_norm = norm(rhs).max(f64::MIN_POSITIVE);
    let mut rs_old = dot(res, res).re;

    let mut converged = norm(res) <= CN_SOLVER_TOL * rhs_norm;
    let mut iter = 0;
    while !converged && iter < CN_MAX_ITER {
        apply_m(dir, h1, mdir);
        let alpha = rs_old / dot(dir, mdir).re;
        for k in 0..g.n_nodes() {
            x[k] += alpha * dir[k];
            res[k] -= alpha * mdir[k];
        }
        let rs_new = dot(res, res).re;
        converged = rs_new.sqrt() <= CN_SOLVER_TOL * rhs_norm;
        let beta = rs_new / rs_old;
        for k in 0..g.n_nodes() {
            dir[k] = res[k] + beta * dir[k];
        }
        rs_old = rs_new;
        iter += 1;
    }
    if !converged {
        return Err(CoreError::SolverDiverged {
            max_iter: CN_MAX_ITER,
            residual: norm(res) / rhs_norm,
        });
    }
    s.psi.copy_from_slice(&x);
    s.t += dt;
    Ok(())
}

fn step_psi_rk4(s: &mut LatticeState, p: &PhysicalParams, dt: f64, ws: &mut PsiWorkspace) {
    let g = s.grid;
    let n = g.n_nodes();
    let minus_i_over_h = Complex64::new(0.0, -1.0 / p.hbar);
    let [k1, k2, k3, k4, stage, _] = &mut ws.buf;

    apply_hamiltonian(&g, p, &s.a1, &s.a2, &s.psi, k1);
    for k in 0..n {
        k1[k] *= minus_i_over_h;
        stage[k] = s.psi[k] + 0.5 * dt * k1[k];
    }
    apply_hamiltonian(&g, p, &s.a1, &s.a2, stage, k2);
    for k in 0..n {
        k2[k] *= minus_i_over_h;
        stage[k] = s.psi[k] + 0.5 * dt * k2[k];
    }
    apply_hamiltonian(&g, p, &s.a1, &s.a2, stage, k3);
    for k in 0..n {
        k3[k] *= minus_i_over_h;
        stage[k] = s.psi[k] + dt * k3[k];
    }
    apply_hamiltonian(&g, p, &s.a1, &s.a2, stage, k4);
    for k in 0..n {
        k4[k] *= minus_i_over_h;
        s.psi[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    s.t += dt;
}
