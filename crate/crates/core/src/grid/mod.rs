//! Vertex-centered rectangular grids, nodal fields and the discrete operators
//! acting on them.
//!
//! Nodes sit on the boundary (`x_i = i·h`, `h = L/(N−1)`), quadrature is the
//! composite trapezoid rule, and every flux-form operator assigns zero flux
//! to boundary faces, which is the discrete homogeneous Neumann condition.

mod flux;
mod ops;
pub mod snapshot;

pub use flux::{CenteredFlux, FluxScheme, UpwindFlux};
pub use ops::{
    apply_laplacian, grad_half_power_norm, integrate, integrate_power, laplacian_neumann,
    pairwise_sum, taxis_divergence, taxis_divergence_with, weighted_dot,
};

use thiserror::Error;

/// Minimum number of nodes per axis.
pub const MIN_COUNT: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid dimension must be 1 or 2, got {0}")]
    Dimension(usize),
    #[error("axis {axis}: length must be positive and finite, got {length}")]
    Length { axis: usize, length: f64 },
    #[error("axis {axis}: need at least {MIN_COUNT} nodes, got {count}")]
    Count { axis: usize, count: usize },
    #[error("field has {got} values but the grid has {expected} nodes")]
    Size { expected: usize, got: usize },
    #[error("fields live on different grids")]
    Mismatch,
    #[error("negative value {value} at node {index}")]
    Negative { index: usize, value: f64 },
    #[error("non-finite value at node {index}")]
    NonFinite { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    lengths: [f64; 2],
    counts: [usize; 2],
}

impl Grid {
    pub fn new(lengths: &[f64], counts: &[usize]) -> Result<Self, GridError> {
        let dim = lengths.len();
        if !(1..=2).contains(&dim) {
            return Err(GridError::Dimension(dim));
        }
        if counts.len() != dim {
            return Err(GridError::Dimension(counts.len()));
        }
        let mut grid = Self {
            dim,
            lengths: [1.0; 2],
            counts: [1; 2],
        };
        for axis in 0..dim {
            let (length, count) = (lengths[axis], counts[axis]);
            if !(length > 0.0 && length.is_finite()) {
                return Err(GridError::Length { axis, length });
            }
            if count < MIN_COUNT {
                return Err(GridError::Count { axis, count });
            }
            grid.lengths[axis] = length;
            grid.counts[axis] = count;
        }
        Ok(grid)
    }

    pub fn new_1d(length: f64, count: usize) -> Result<Self, GridError> {
        Self::new(&[length], &[count])
    }

    pub fn new_2d(lengths: [f64; 2], counts: [usize; 2]) -> Result<Self, GridError> {
        Self::new(&lengths, &counts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths[..self.dim]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts[..self.dim]
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.lengths[axis] / (self.counts[axis] - 1) as f64
    }

    /// Total number of nodes.
    pub fn len(&self) -> usize {
        self.counts().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lebesgue measure of the rectangle.
    pub fn measure(&self) -> f64 {
        self.lengths().iter().product()
    }

    /// Stride of `axis` in the row-major node ordering.
    pub(crate) fn stride(&self, axis: usize) -> usize {
        if self.dim == 2 && axis == 0 {
            self.counts[1]
        } else {
            1
        }
    }

    /// Trapezoid (control-volume) weight of node `i` along `axis`.
    pub(crate) fn axis_weight(&self, axis: usize, i: usize) -> f64 {
        let h = self.spacing(axis);
        if i == 0 || i + 1 == self.counts[axis] {
            0.5 * h
        } else {
            h
        }
    }

    /// Per-axis indices of a flat node index.
    pub fn multi_index(&self, idx: usize) -> [usize; 2] {
        if self.dim == 1 {
            [idx, 0]
        } else {
            [idx / self.counts[1], idx % self.counts[1]]
        }
    }

    /// Physical coordinates of a node (second entry is 0 in 1D).
    pub fn coords(&self, idx: usize) -> [f64; 2] {
        let [i, j] = self.multi_index(idx);
        let y = if self.dim == 2 {
            j as f64 * self.spacing(1)
        } else {
            0.0
        };
        [i as f64 * self.spacing(0), y]
    }

    /// Tensor-product trapezoid weights; they sum to the domain measure.
    pub fn weights(&self) -> Vec<f64> {
        (0..self.len())
            .map(|idx| {
                let [i, j] = self.multi_index(idx);
                let wx = self.axis_weight(0, i);
                if self.dim == 2 {
                    wx * self.axis_weight(1, j)
                } else {
                    wx
                }
            })
            .collect()
    }
}

/// Nodal values of a scalar function on a [`Grid`], row-major in 2D.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self, GridError> {
        if values.len() != grid.len() {
            return Err(GridError::Size {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        Self {
            grid,
            values: vec![value; grid.len()],
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    /// Samples `f(x, y)` at every node (`y = 0` in 1D).
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|idx| {
                let [x, y] = grid.coords(idx);
                f(x, y)
            })
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Maximum absolute value; NaN if any node is NaN.
    pub fn linf(&self) -> f64 {
        self.values.iter().fold(0.0, |acc: f64, &x| {
            if x.is_nan() || acc.is_nan() {
                f64::NAN
            } else {
                acc.max(x.abs())
            }
        })
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|x| x.is_finite())
    }

    pub fn same_grid(&self, other: &Field) -> bool {
        self.grid == other.grid
    }

    /// Errors on the first negative or non-finite node.
    pub fn check_nonnegative(&self) -> Result<(), GridError> {
        for (index, &value) in self.values.iter().enumerate() {
            if !value.is_finite() {
                return Err(GridError::NonFinite { index });
            }
            if value < 0.0 {
                return Err(GridError::Negative { index, value });
            }
        }
        Ok(())
    }
}
