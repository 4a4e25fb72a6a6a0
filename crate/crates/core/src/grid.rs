//! Bounded 2D node grid and finite-difference stencils.
//!
//! Nodes are stored row-major, x-fastest: flat index `j * nx + i` for
//! column `i` (x direction) and row `j` (y direction). Physical
//! coordinates are `x = i * spacing`, `y = j * spacing`.

use num_complex::Complex64;

use crate::error::CoreError;
use crate::Result;

/// Minimum grid extent per axis accepted by constructors.
pub const MIN_GRID_EXTENT: usize = 8;

/// Uniform rectangular grid of nodes with Dirichlet boundary ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub spacing: f64,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, spacing: f64) -> Result<Self> {
        if nx < MIN_GRID_EXTENT || ny < MIN_GRID_EXTENT {
            return Err(CoreError::GridTooSmall {
                nx,
                ny,
                min: MIN_GRID_EXTENT,
            });
        }
        if !spacing.is_finite() || spacing <= 0.0 {
            return Err(CoreError::InvalidParameter {
                name: "spacing",
                reason: format!("must be positive and finite, got {spacing}"),
            });
        }
        Ok(Self { nx, ny, spacing })
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1
    }

    /// Chebyshev ring index: 0 on the boundary, increasing inward.
    #[inline]
    pub fn ring(&self, i: usize, j: usize) -> usize {
        i.min(j).min(self.nx - 1 - i).min(self.ny - 1 - j)
    }

    /// Physical distance from node to the nearest boundary node.
    #[inline]
    pub fn boundary_distance(&self, i: usize, j: usize) -> f64 {
        self.ring(i, j) as f64 * self.spacing
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.spacing
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.spacing
    }

    /// Domain extent along x, `(nx - 1) * spacing`.
    pub fn lx(&self) -> f64 {
        (self.nx - 1) as f64 * self.spacing
    }

    pub fn ly(&self) -> f64 {
        (self.ny - 1) as f64 * self.spacing
    }

    /// Physical area of the sample rectangle.
    pub fn area(&self) -> f64 {
        self.lx() * self.ly()
    }

    /// Maximum ring index of any node.
    pub fn max_ring(&self) -> usize {
        ((self.nx - 1) / 2).min((self.ny - 1) / 2)
    }

    /// Iterate interior node indices `(i, j)`.
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nx = self.nx;
        let ny = self.ny;
        (1..ny - 1).flat_map(move |j| (1..nx - 1).map(move |i| (i, j)))
    }

    /// Iterate nodes at ring index `>= margin` (margin 1 = interior).
    pub fn nodes_with_margin(&self, margin: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let g = *self;
        (0..g.ny).flat_map(move |j| (0..g.nx).map(move |i| (i, j)))
            .filter(move |&(i, j)| g.ring(i, j) >= margin)
    }

    /// Trapezoid quadrature weight for node-sum integration: 1 in the
    /// interior, 1/2 on edges, 1/4 on corners. `sum w * f * spacing^2`
    /// is exact for integrands constant over the rectangle.
    pub fn quad_weight(&self, i: usize, j: usize) -> f64 {
        let wx = if i == 0 || i == self.nx - 1 { 0.5 } else { 1.0 };
        let wy = if j == 0 || j == self.ny - 1 { 0.5 } else { 1.0 };
        wx * wy
    }
}

/// Real scalar field on the nodes of a grid.
pub type RealField = Vec<f64>;
/// Complex scalar field on the nodes of a grid.
pub type ComplexField = Vec<Complex64>;

/// Central x-derivative at an interior node.
#[inline]
pub fn dcx(g: &Grid2D, f: &[f64], i: usize, j: usize) -> f64 {
    (f[g.idx(i + 1, j)] - f[g.idx(i - 1, j)]) / (2.0 * g.spacing)
}

/// Central y-derivative at an interior node.
#[inline]
pub fn dcy(g: &Grid2D, f: &[f64], i: usize, j: usize) -> f64 {
    (f[g.idx(i, j + 1)] - f[g.idx(i, j - 1)]) / (2.0 * g.spacing)
}

#[inline]
pub fn dcx_c(g: &Grid2D, f: &[Complex64], i: usize, j: usize) -> Complex64 {
    (f[g.idx(i + 1, j)] - f[g.idx(i - 1, j)]) / (2.0 * g.spacing)
}

#[inline]
pub fn dcy_c(g: &Grid2D, f: &[Complex64], i: usize, j: usize) -> Complex64 {
    (f[g.idx(i, j + 1)] - f[g.idx(i, j - 1)]) / (2.0 * g.spacing)
}

/// Central-difference curl `d1 A2 - d2 A1` at an interior node.
#[inline]
pub fn curl_central(g: &Grid2D, a1: &[f64], a2: &[f64], i: usize, j: usize) -> f64 {
    dcx(g, a2, i, j) - dcy(g, a1, i, j)
}

/// Forward-difference gradient of a node scalar, defined on nodes with
/// `i < nx - 1` (x component) and `j < ny - 1` (y component); the last
/// slice is closed with a backward difference so the output covers all
/// nodes. Composing with [`div_backward`] reproduces the 5-point
/// Laplacian exactly on interior nodes.
pub fn grad_forward(g: &Grid2D, f: &[f64]) -> (RealField, RealField) {
    let mut gx = vec![0.0; g.n_nodes()];
    let mut gy = vec![0.0; g.n_nodes()];
    let a = g.spacing;
    for j in 0..g.ny {
        for i in 0..g.nx {
            let k = g.idx(i, j);
            gx[k] = if i + 1 < g.nx {
                (f[g.idx(i + 1, j)] - f[k]) / a
            } else {
                (f[k] - f[g.idx(i - 1, j)]) / a
            };
            gy[k] = if j + 1 < g.ny {
                (f[g.idx(i, j + 1)] - f[k]) / a
            } else {
                (f[k] - f[g.idx(i, j - 1)]) / a
            };
        }
    }
    (gx, gy)
}

/// Backward-difference divergence on interior nodes (adjoint partner of
/// [`grad_forward`]).
pub fn div_backward(g: &Grid2D, a1: &[f64], a2: &[f64]) -> RealField {
    let mut d = vec![0.0; g.n_nodes()];
    let a = g.spacing;
    for (i, j) in g.interior() {
        let k = g.idx(i, j);
        d[k] = (a1[k] - a1[g.idx(i - 1, j)]) / a + (a2[k] - a2[g.idx(i, j - 1)]) / a;
    }
    d
}

/// Central-difference divergence on interior nodes.
pub fn div_central(g: &Grid2D, a1: &[f64], a2: &[f64]) -> RealField {
    let mut d = vec![0.0; g.n_nodes()];
    for (i, j) in g.interior() {
        d[g.idx(i, j)] = dcx(g, a1, i, j) + dcy(g, a2, i, j);
    }
    d
}

/// Mean of a field over interior nodes.
pub fn interior_mean(g: &Grid2D, f: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (i, j) in g.interior() {
        sum += f[g.idx(i, j)];
        count += 1;
    }
    sum / count as f64
}

/// Infinity norm over nodes at ring index `>= margin`.
pub fn inf_norm_with_margin(g: &Grid2D, f: &[f64], margin: usize) -> f64 {
    g.nodes_with_margin(margin)
        .map(|(i, j)| f[g.idx(i, j)].abs())
        .fold(0.0, f64::max)
}
