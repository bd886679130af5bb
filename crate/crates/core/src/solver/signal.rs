//! Signal equations `τ ψ_t = Δψ − ψ + source` and the two signal models.

use std::fmt::Debug;

use crate::grid::Field;
use crate::linalg::{conjugate_gradient, LinearSolveError, ShiftedLaplacian};

/// Stopping rule for the SPD solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSettings {
    pub tol: f64,
    pub max_iters: usize,
}

/// Solves `−Δ_h ψ + ψ = source` with zero-flux boundaries.
pub fn solve_elliptic_signal(
    source: &Field,
    tol: f64,
    max_iters: usize,
) -> Result<Field, LinearSolveError> {
    let op = ShiftedLaplacian::new(1.0, 1.0);
    conjugate_gradient(&op, source, tol, max_iters).map(|(psi, _)| psi)
}

/// One implicit Euler step of `ψ_t = Δψ − ψ + source`:
/// `(I + dt(I − Δ_h)) ψ = prev + dt·source`.
pub fn step_parabolic_signal(
    prev: &Field,
    source: &Field,
    dt: f64,
    tol: f64,
    max_iters: usize,
) -> Result<Field, LinearSolveError> {
    let rhs_values = prev
        .values()
        .iter()
        .zip(source.values())
        .map(|(p, s)| p + dt * s)
        .collect();
    let rhs = Field::new(*prev.grid(), rhs_values).expect("same grid");
    let op = ShiftedLaplacian::new(1.0 + dt, dt);
    conjugate_gradient(&op, &rhs, tol, max_iters).map(|(psi, _)| psi)
}

/// How a chemical signal responds to the cell density.
///
/// A time step first asks for the signal the cell update should see
/// ([`SignalModel::for_cell_step`]) and, once the step is accepted, for the
/// signal stored with the new state ([`SignalModel::after_cell_step`]).
pub trait SignalModel: Debug + Send + Sync {
    /// Registry name.
    fn name(&self) -> &'static str;

    /// Regime flag this model implements.
    fn tau(&self) -> u8;

    /// Signal at `t = 0` given the initial production and, for evolving
    /// signals, the prescribed initial datum.
    fn initial(
        &self,
        source: &Field,
        datum: Option<&Field>,
        lin: LinearSettings,
    ) -> Result<Field, LinearSolveError>;

    fn for_cell_step(
        &self,
        current: &Field,
        source: &Field,
        dt: f64,
        lin: LinearSettings,
    ) -> Result<Field, LinearSolveError>;

    fn after_cell_step(
        &self,
        stepped: Field,
        new_source: &Field,
        lin: LinearSettings,
    ) -> Result<Field, LinearSolveError>;
}

/// `0 = Δψ − ψ + source`: the signal is slaved to the current density.
#[derive(Debug, Clone, Copy, Default)]
pub struct EllipticSignal;

impl SignalModel for EllipticSignal {
    fn name(&self) -> &'static str {
        "elliptic"
    }

    fn tau(&self) -> u8 {
        0
    }

    fn initial(
        &self,
        source: &Field,
        _datum: Option<&Field>,
        lin: LinearSettings,
    ) -> Result<Field, LinearSolveError> {
        solve_elliptic_signal(source, lin.tol, lin.max_iters)
    }

    fn for_cell_step(
        &self,
        current: &Field,
        _source: &Field,
        _dt: f64,
        _lin: LinearSettings,
    ) -> Result<Field, LinearSolveError> {
        // already solved from the density at the start of the step
        Ok(current.clone())
    }

    fn after_cell_step(
        &self,
        _stepped: Field,
        new_source: &Field,
        lin: LinearSettings,
    ) -> Result<Field, LinearSolveError> {
        solve_elliptic_signal(new_source, lin.tol, lin.max_iters)
    }
}

/// `ψ_t = Δψ − ψ + source`, advanced by implicit Euler before the cell update.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParabolicSignal;

impl SignalModel for ParabolicSignal {
    fn name(&self) -> &'static str {
        "parabolic"
    }

    fn tau(&self) -> u8 {
        1
    }

    fn initial(
        &self,
        source: &Field,
        datum: Option<&Field>,
        _lin: LinearSettings,
    ) -> Result<Field, LinearSolveError> {
        Ok(datum.cloned().unwrap_or_else(|| Field::zeros(*source.grid())))
    }

    fn for_cell_step(
        &self,
        current: &Field,
        source: &Field,
        dt: f64,
        lin: LinearSettings,
    ) -> Result<Field, LinearSolveError> {
        step_parabolic_signal(current, source, dt, lin.tol, lin.max_iters)
    }

    fn after_cell_step(
        &self,
        stepped: Field,
        _new_source: &Field,
        _lin: LinearSettings,
    ) -> Result<Field, LinearSolveError> {
        Ok(stepped)
    }
}
