use thiserror::Error;

use super::{LinearSettings, SolverConfig};
use crate::diagnostics::{nonnegative_part, POSITIVITY_RTOL};
use crate::grid::{integrate_power, taxis_divergence_with, Field, FluxScheme, GridError};
use crate::linalg::{conjugate_gradient, LinearSolveError, ShiftedLaplacian};
use crate::model::ModelParams;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    /// The update produced a node below `−1e-12·‖u‖∞`; retry with a smaller step.
    #[error("update lost positivity (min {min:e}, tolerance {tolerance:e})")]
    Positivity { min: f64, tolerance: f64 },
    /// The explicit right-hand side overflowed; carries it as the blown-up density.
    #[error("explicit update is not finite")]
    NonFinite(Field),
    #[error(transparent)]
    Linear(#[from] LinearSolveError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Explicit part of the cell equation at the current state:
/// `∇·(u∇(ξw − χv)) + u^α (a − b ∫u^β)`.
///
/// The two taxis terms share one flux evaluation through the combined
/// potential `ξw − χv`, so equal attraction and repulsion cancel exactly.
pub fn cell_explicit_rate(
    u: &Field,
    v: &Field,
    w: &Field,
    params: &ModelParams,
    flux: &dyn FluxScheme,
) -> Result<Field, GridError> {
    let positive = nonnegative_part(u)?;
    let nonlocal = integrate_power(&positive, params.beta)?;
    let damping = params.a - params.b * nonlocal;

    let potential_values = v
        .values()
        .iter()
        .zip(w.values())
        .map(|(vi, wi)| params.xi * wi - params.chi * vi)
        .collect();
    let potential = Field::new(*v.grid(), potential_values)?;
    let mut rate = taxis_divergence_with(flux, u, &potential)?;
    for (r, &ui) in rate.values_mut().iter_mut().zip(positive.values()) {
        *r += ui.powf(params.alpha) * damping;
    }
    Ok(rate)
}

/// IMEX update of the cell density: taxis and the nonlocal logistic source
/// explicit at the current state (the integral `∫u^β` frozen), diffusion
/// implicit: `(I − dt Δ_h) u_next = u + dt·R`.
pub fn step_cell(
    u: &Field,
    v: &Field,
    w: &Field,
    params: &ModelParams,
    flux: &dyn FluxScheme,
    dt: f64,
    config: &SolverConfig,
) -> Result<Field, StepError> {
    let rate = cell_explicit_rate(u, v, w, params, flux)?;
    let rhs_values: Vec<f64> = u
        .values()
        .iter()
        .zip(rate.values())
        .map(|(ui, ri)| ui + dt * ri)
        .collect();
    let rhs = Field::new(*u.grid(), rhs_values)?;
    if !rhs.is_finite() {
        return Err(StepError::NonFinite(rhs));
    }
    let lin = LinearSettings::from(config);
    let op = ShiftedLaplacian::new(1.0, dt);
    let (next, _) = conjugate_gradient(&op, &rhs, lin.tol, lin.max_iters)?;
    let tolerance = POSITIVITY_RTOL * next.linf();
    let min = next.min();
    if min < -tolerance {
        return Err(StepError::Positivity { min, tolerance });
    }
    Ok(next)
}
