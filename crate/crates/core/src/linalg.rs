//! Conjugate gradients for the shifted Neumann Laplacian `c₀ I − c₁ Δ_h`.
//!
//! `Δ_h` is self-adjoint in the trapezoid-weighted inner product, so for
//! `c₀ > 0`, `c₁ ≥ 0` the operator is SPD there and plain CG applies with
//! weighted dot products. Constants are eigenvectors (eigenvalue `c₀`), and
//! starting from `x₀ = b/c₀` keeps every residual mean-free, so the
//! quadrature of the iterate equals `∫b / c₀` up to round-off no matter
//! where the iteration stops.

use thiserror::Error;

use crate::grid::{apply_laplacian, weighted_dot, Field, Grid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinearSolveError {
    #[error("conjugate gradients stalled after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("right-hand side has non-finite entries")]
    NonFinite,
}

/// `c₀ I − c₁ Δ_h` on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedLaplacian {
    pub shift: f64,
    pub diffusion: f64,
}

impl ShiftedLaplacian {
    pub fn new(shift: f64, diffusion: f64) -> Self {
        debug_assert!(shift > 0.0 && diffusion >= 0.0);
        Self { shift, diffusion }
    }

    pub fn apply(&self, grid: &Grid, x: &[f64], out: &mut [f64]) {
        apply_laplacian(grid, x, out);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = self.shift * xi - self.diffusion * *o;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    /// Final `‖r‖_W / ‖b‖_W`.
    pub relative_residual: f64,
}

/// Solves `op · x = b` to `‖b − op·x‖_W ≤ tol ‖b‖_W`.
pub fn conjugate_gradient(
    op: &ShiftedLaplacian,
    b: &Field,
    tol: f64,
    max_iters: usize,
) -> Result<(Field, SolveStats), LinearSolveError> {
    if !b.is_finite() {
        return Err(LinearSolveError::NonFinite);
    }
    let grid = *b.grid();
    let w = grid.weights();
    let rhs = b.values();
    let n = rhs.len();

    let b_norm = weighted_dot(&w, rhs, rhs).sqrt();
    if b_norm == 0.0 {
        return Ok((
            Field::zeros(grid),
            SolveStats {
                iterations: 0,
                relative_residual: 0.0,
            },
        ));
    }

    let mut x: Vec<f64> = rhs.iter().map(|v| v / op.shift).collect();
    let mut ap = vec![0.0; n];
    op.apply(&grid, &x, &mut ap);
    let mut r: Vec<f64> = rhs.iter().zip(&ap).map(|(b, a)| b - a).collect();
    let mut rr = weighted_dot(&w, &r, &r);
    let target = tol * b_norm;
    let mut p = r.clone();

    let mut iterations = 0;
    while rr.sqrt() > target {
        if iterations == max_iters {
            return Err(LinearSolveError::NotConverged {
                iterations,
                residual: rr.sqrt() / b_norm,
            });
        }
        op.apply(&grid, &p, &mut ap);
        let pap = weighted_dot(&w, &p, &ap);
        if !(pap > 0.0) {
            return Err(LinearSolveError::NotConverged {
                iterations,
                residual: rr.sqrt() / b_norm,
            });
        }
        let step = rr / pap;
        for i in 0..n {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        let rr_next = weighted_dot(&w, &r, &r);
        let beta = rr_next / rr;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rr = rr_next;
        iterations += 1;
    }

    let field = Field::new(grid, x).expect("solution has grid size");
    Ok((
        field,
        SolveStats {
            iterations,
            relative_residual: rr.sqrt() / b_norm,
        },
    ))
}
