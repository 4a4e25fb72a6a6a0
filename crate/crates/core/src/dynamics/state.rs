//! Lattice field state: complex carrier field plus two real gauge
//! potentials on a bounded grid with a Dirichlet boundary for psi and
//! free boundary values for the gauge fields.

use num_complex::Complex64;

use crate::grid::{interior_mean, ComplexField, Grid2D, RealField};
use crate::params::PhysicalParams;

/// Field content at one instant: `psi` on nodes (zero on the boundary
/// ring), gauge potentials `a1, a2` on nodes (unconstrained on the
/// boundary), and the most recent internal-slope estimate of the
/// electric field `e = -dA/dt` recorded by the gauge stepper.
#[derive(Debug, Clone)]
pub struct LatticeState {
    pub grid: Grid2D,
    pub t: f64,
    pub psi: ComplexField,
    pub a1: RealField,
    pub a2: RealField,
    pub e1: RealField,
    pub e2: RealField,
}

impl LatticeState {
    pub fn zeros(grid: Grid2D) -> Self {
        let n = grid.n_nodes();
        Self {
            grid,
            t: 0.0,
            psi: vec![Complex64::new(0.0, 0.0); n],
            a1: vec![0.0; n],
            a2: vec![0.0; n],
            e1: vec![0.0; n],
            e2: vec![0.0; n],
        }
    }

    /// Total squared norm `sum |psi|^2 a^2`.
    pub fn psi_norm_sq(&self) -> f64 {
        let a2 = self.grid.spacing * self.grid.spacing;
        self.psi.iter().map(|c| c.norm_sqr()).sum::<f64>() * a2
    }

    /// Mean carrier density over interior nodes.
    pub fn mean_density(&self) -> f64 {
        let dens: Vec<f64> = self.psi.iter().map(|c| c.norm_sqr()).collect();
        interior_mean(&self.grid, &dens)
    }

    /// Smooth ring taper: 0 on the boundary, 1 from `rings` rings
    /// inward, C2 at both ends to keep the high-wavenumber content of
    /// the window (and hence boundary-relaxation transients) small.
    pub fn taper_weight(grid: &Grid2D, i: usize, j: usize, rings: usize) -> f64 {
        if rings == 0 {
            return if grid.is_boundary(i, j) { 0.0 } else { 1.0 };
        }
        let r = grid.ring(i, j) as f64 / rings as f64;
        if r >= 1.0 {
            1.0
        } else {
            r * r * r * (10.0 + r * (-15.0 + 6.0 * r))
        }
    }

    /// Fill psi with a tapered plane wave of bulk density `density`:
    /// `sqrt(density) * taper * exp(i k . x)`.
    pub fn set_plane_wave(&mut self, kx: f64, ky: f64, density: f64, taper_rings: usize) {
        let amp = density.sqrt();
        let g = self.grid;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let w = Self::taper_weight(&g, i, j, taper_rings);
                let phase = kx * g.x(i) + ky * g.y(j);
                self.psi[g.idx(i, j)] = Complex64::from_polar(amp * w, phase);
            }
        }
    }

    /// Fill psi with a moving Gaussian packet, peak density `density`.
    #[allow(clippy::too_many_arguments)]
    pub fn set_gaussian_packet(
        &mut self,
        x0: f64,
        y0: f64,
        width: f64,
        kx: f64,
        ky: f64,
        density: f64,
        taper_rings: usize,
    ) {
        let amp = density.sqrt();
        let g = self.grid;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let w = Self::taper_weight(&g, i, j, taper_rings);
                let dx = g.x(i) - x0;
                let dy = g.y(j) - y0;
                let env = (-(dx * dx + dy * dy) / (2.0 * width * width)).exp();
                let phase = kx * g.x(i) + ky * g.y(j);
                self.psi[g.idx(i, j)] = Complex64::from_polar(amp * w * env, phase);
            }
        }
    }

    /// Fill psi with the box ground mode `sin(pi i/(nx-1)) sin(pi j/(ny-1))`
    /// scaled to peak density `density`. Stationary under zero gauge
    /// field, with carrier density vanishing toward the edges.
    pub fn set_ground_mode(&mut self, density: f64) {
        let amp = density.sqrt();
        let g = self.grid;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let sx = (std::f64::consts::PI * i as f64 / (g.nx - 1) as f64).sin();
                let sy = (std::f64::consts::PI * j as f64 / (g.ny - 1) as f64).sin();
                self.psi[g.idx(i, j)] = Complex64::new(amp * sx * sy, 0.0);
            }
        }
    }

    /// Static relaxation-gauge drive `A = E tau` for a uniform applied
    /// field `(ex, ey)`.
    pub fn set_uniform_drive(&mut self, ex: f64, ey: f64, tau: f64) {
        self.a1.fill(ex * tau);
        self.a2.fill(ey * tau);
    }

    /// Pure-gauge potential from a boundary ramp: `lambda` rises from 0
    /// at the boundary to `amplitude` in the bulk with decay scale
    /// `width`, and `A = grad lambda` is taken with the forward
    /// differences used by the discrete Helmholtz split, so the field
    /// splits as pure gradient to solver tolerance.
    pub fn set_pure_gauge_ramp(&mut self, amplitude: f64, width: f64) {
        let g = self.grid;
        let lambda = boundary_ramp_potential(&g, amplitude, width);
        let (gx, gy) = crate::grid::grad_forward(&g, &lambda);
        self.a1 = gx;
        self.a2 = gy;
    }

    /// Gauge transformation `psi -> exp(i e lambda / hbar) psi`,
    /// `A -> A + grad lambda`, with the gradient supplied analytically.
    pub fn apply_gauge_transform(
        &mut self,
        p: &PhysicalParams,
        lambda: &dyn Fn(f64, f64) -> f64,
        grad_lambda: &dyn Fn(f64, f64) -> (f64, f64),
    ) {
        let g = self.grid;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let k = g.idx(i, j);
                let (x, y) = (g.x(i), g.y(j));
                let phase = p.e * lambda(x, y) / p.hbar;
                self.psi[k] *= Complex64::from_polar(1.0, phase);
                let (dx, dy) = grad_lambda(x, y);
                self.a1[k] += dx;
                self.a2[k] += dy;
            }
        }
    }
}

/// Scalar `lambda(d)` that vanishes on the boundary and saturates at
/// `amplitude` in the bulk: `amplitude * (1 - exp(-d / width))` in the
/// Chebyshev boundary distance `d`. Its gradient is an edge-localized
/// gauge field with decay length `width`.
pub fn boundary_ramp_potential(g: &Grid2D, amplitude: f64, width: f64) -> RealField {
    let mut lambda = vec![0.0; g.n_nodes()];
    for j in 0..g.ny {
        for i in 0..g.nx {
            let d = g.boundary_distance(i, j);
            lambda[g.idx(i, j)] = amplitude * (1.0 - (-d / width).exp());
        }
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2D;

    #[test]
    fn plane_wave_has_requested_bulk_density() {
        let g = Grid2D::new(24, 24, 0.5).unwrap();
        let mut s = LatticeState::zeros(g);
        s.set_plane_wave(0.3, -0.2, 2.0, 2);
        let center = s.psi[g.idx(12, 12)];
        assert!((center.norm_sqr() - 2.0).abs() < 1e-12);
        for i in 0..g.nx {
            assert_eq!(s.psi[g.idx(i, 0)], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn boundary_ramp_vanishes_on_edge_and_saturates() {
        let g = Grid2D::new(32, 32, 0.25).unwrap();
        let lam = boundary_ramp_potential(&g, 3.0, 0.5);
        assert_eq!(lam[g.idx(0, 7)], 0.0);
        let bulk = lam[g.idx(16, 16)];
        assert!((bulk - 3.0).abs() < 3.0 * 1e-3);
    }

    #[test]
    fn pure_gauge_ramp_is_edge_localized() {
        let g = Grid2D::new(32, 32, 0.25).unwrap();
        let mut s = LatticeState::zeros(g);
        s.set_pure_gauge_ramp(1.0, 0.5);
        let edge_mag = s.a1[g.idx(1, 16)].hypot(s.a2[g.idx(1, 16)]);
        let bulk_mag = s.a1[g.idx(16, 16)].hypot(s.a2[g.idx(16, 16)]);
        assert!(edge_mag > 10.0 * bulk_mag);
    }
}
