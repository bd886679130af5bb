//! Time integration of the coupled system.
//!
//! Each step first brings the signals to the level the cell update needs
//! (elliptic: already solved from the current density; parabolic: one
//! implicit Euler step driven by the current production), then performs the
//! IMEX cell update. A step whose result dips below the positivity tolerance
//! is retried with half the step; the step never grows back. The run stops
//! at `t_end`, when `‖u‖∞` exceeds the blow-up threshold (or stops being
//! finite), or when the step falls below `dt_min`.
//!
//! Distinguishing a genuine singularity from a step collapse is heuristic:
//! both can occur near blow-up, and only the former is reported as
//! [`RunStatus::BlowupDetected`].

mod cell;
mod signal;

pub use cell::{cell_explicit_rate, step_cell, StepError};
pub use signal::{
    solve_elliptic_signal, step_parabolic_signal, EllipticSignal, LinearSettings, ParabolicSignal,
    SignalModel,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{default_k_set, nonnegative_part, record, DiagnosticsError, DiagnosticsRecord};
use crate::grid::{Field, GridError};
use crate::linalg::LinearSolveError;
use crate::model::{ModelParams, ProductionSpec};
use crate::registry::{flux_schemes, signal_model_name, signal_models, RegistryError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_end: f64,
    /// `‖u‖∞` above which the run is declared blown up.
    pub blowup_threshold: f64,
    pub dt_min: f64,
    /// Relative weighted residual for every SPD solve.
    pub linear_tol: f64,
    pub max_linear_iters: usize,
    /// Donor-cell taxis fluxes instead of centered ones.
    pub upwind: bool,
    /// Exponents `k` for the L^k diagnostics; empty selects the default set.
    pub diag_k_set: Vec<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 1.0,
            blowup_threshold: 1e8,
            dt_min: 1e-10,
            linear_tol: 1e-10,
            max_linear_iters: 20_000,
            upwind: false,
            diag_k_set: Vec::new(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::Config(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.dt_min > 0.0) {
            return bad(format!("dt_min must be positive, got {}", self.dt_min));
        }
        if self.dt < self.dt_min {
            return bad(format!("dt = {} is below dt_min = {}", self.dt, self.dt_min));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end must be positive, got {}", self.t_end));
        }
        if !(self.blowup_threshold > 0.0) {
            return bad(format!("blowup_threshold must be positive, got {}", self.blowup_threshold));
        }
        if !(self.linear_tol > 0.0 && self.linear_tol < 1.0) {
            return bad(format!("linear_tol must lie in (0, 1), got {}", self.linear_tol));
        }
        if self.max_linear_iters == 0 {
            return bad("max_linear_iters must be positive".into());
        }
        if let Some(k) = self.diag_k_set.iter().find(|&&k| !(k >= 2.0 && k.is_finite())) {
            return bad(format!("diagnostic exponents must be at least 2, got {k}"));
        }
        Ok(())
    }

    /// Configured diagnostic exponents, or the default set for dimension `n`.
    pub fn k_set(&self, n: u32) -> Vec<f64> {
        if self.diag_k_set.is_empty() {
            default_k_set(n)
        } else {
            self.diag_k_set.clone()
        }
    }

    pub fn flux_scheme_name(&self) -> &'static str {
        if self.upwind {
            "upwind"
        } else {
            "centered"
        }
    }
}

impl From<&SolverConfig> for LinearSettings {
    fn from(config: &SolverConfig) -> Self {
        Self {
            tol: config.linear_tol,
            max_iters: config.max_linear_iters,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver setup: {0}")]
    Config(String),
    #[error(transparent)]
    Linear(#[from] LinearSolveError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationState {
    pub t: f64,
    pub u: Field,
    pub v: Field,
    pub w: Field,
    pub step_count: usize,
    pub last_dt: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    CompletedBounded,
    BlowupDetected,
    StepCollapse,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::CompletedBounded => "CompletedBounded",
            RunStatus::BlowupDetected => "BlowupDetected",
            RunStatus::StepCollapse => "StepCollapse",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub t_final: f64,
    /// Running maximum of `‖u‖∞` over accepted states.
    pub sup_linf_u: f64,
    /// Time at which `sup_linf_u` was first attained.
    pub t_sup_linf_u: f64,
    /// Running maximum of `∫u`.
    pub mass_max: f64,
    pub rejected_steps: usize,
    pub diagnostics: Vec<DiagnosticsRecord>,
    pub final_state: SimulationState,
}

/// `true` iff some node exceeds the threshold or is not finite.
pub fn detect_blowup(u: &Field, config: &SolverConfig) -> bool {
    u.values()
        .iter()
        .any(|&x| !x.is_finite() || x > config.blowup_threshold)
}

fn production(spec: &ProductionSpec, u: &Field) -> Result<(Field, Field), GridError> {
    let u = nonnegative_part(u)?;
    Ok((u.map(|s| spec.f_unchecked(s)), u.map(|s| spec.g_unchecked(s))))
}

/// Runs the initial-boundary value problem from `u0` (and, for `τ = 1`, the
/// signal data `v0`, `w0`; missing data default to zero). For `τ = 0` the
/// signal data are ignored and the signals are solved from `u0`.
pub fn run(
    params: &ModelParams,
    spec: &ProductionSpec,
    u0: &Field,
    v0: Option<&Field>,
    w0: Option<&Field>,
    config: &SolverConfig,
) -> Result<RunOutcome, SolverError> {
    run_observed(params, spec, u0, v0, w0, config, |_, _| {})
}

/// [`run`] with a callback invoked on every recorded state, including the
/// initial one.
pub fn run_observed(
    params: &ModelParams,
    spec: &ProductionSpec,
    u0: &Field,
    v0: Option<&Field>,
    w0: Option<&Field>,
    config: &SolverConfig,
    mut observer: impl FnMut(&SimulationState, &DiagnosticsRecord),
) -> Result<RunOutcome, SolverError> {
    config.validate()?;
    u0.check_nonnegative()?;
    if !(config.blowup_threshold > u0.linf()) {
        return Err(SolverError::Config(format!(
            "blowup_threshold {} must exceed the initial sup norm {}",
            config.blowup_threshold,
            u0.linf()
        )));
    }
    let grid = *u0.grid();
    for datum in [v0, w0].into_iter().flatten() {
        if *datum.grid() != grid {
            return Err(GridError::Mismatch.into());
        }
        if params.is_fully_parabolic() {
            datum.check_nonnegative()?;
        }
    }

    let flux = flux_schemes().create(config.flux_scheme_name())?;
    let signals = signal_models().create(signal_model_name(params.tau))?;
    let lin = LinearSettings::from(config);

    let (f0, g0) = production(spec, u0)?;
    let mut state = SimulationState {
        t: 0.0,
        v: signals.initial(&f0, v0, lin)?,
        w: signals.initial(&g0, w0, lin)?,
        u: u0.clone(),
        step_count: 0,
        last_dt: 0.0,
    };

    let first = record(&state, params, config)?;
    observer(&state, &first);
    let mut sup_linf_u = first.linf_u;
    let mut t_sup_linf_u = 0.0;
    let mut mass_max = first.mass;
    let mut diagnostics = vec![first];

    let mut dt = config.dt;
    let mut rejected_steps = 0;
    let mut status = RunStatus::CompletedBounded;
    let finish_slack = 1e-12 * config.t_end;

    while config.t_end - state.t > finish_slack {
        let step = dt.min(config.t_end - state.t);
        let (f_now, g_now) = production(spec, &state.u)?;
        let v_step = signals.for_cell_step(&state.v, &f_now, step, lin)?;
        let w_step = signals.for_cell_step(&state.w, &g_now, step, lin)?;

        let (u_next, overflowed) =
            match step_cell(&state.u, &v_step, &w_step, params, flux.as_ref(), step, config) {
                Ok(u_next) => (u_next, false),
                Err(StepError::Positivity { .. }) => {
                    rejected_steps += 1;
                    dt *= 0.5;
                    if dt < config.dt_min {
                        status = RunStatus::StepCollapse;
                        break;
                    }
                    continue;
                }
                Err(StepError::NonFinite(rhs)) => (rhs, true),
                Err(StepError::Linear(e)) => return Err(e.into()),
                Err(StepError::Grid(e)) => return Err(e.into()),
            };

        state.t += step;
        state.step_count += 1;
        state.last_dt = step;
        let blown_up = overflowed || detect_blowup(&u_next, config);
        state.u = u_next;
        if blown_up {
            state.v = v_step;
            state.w = w_step;
        } else {
            let (f_next, g_next) = production(spec, &state.u)?;
            state.v = signals.after_cell_step(v_step, &f_next, lin)?;
            state.w = signals.after_cell_step(w_step, &g_next, lin)?;
        }

        let rec = record(&state, params, config)?;
        observer(&state, &rec);
        if rec.linf_u > sup_linf_u || rec.linf_u.is_nan() {
            sup_linf_u = if rec.linf_u.is_nan() { f64::INFINITY } else { rec.linf_u };
            t_sup_linf_u = state.t;
        }
        if rec.mass > mass_max {
            mass_max = rec.mass;
        }
        diagnostics.push(rec);
        if blown_up {
            status = RunStatus::BlowupDetected;
            break;
        }
    }

    Ok(RunOutcome {
        status,
        t_final: state.t,
        sup_linf_u,
        t_sup_linf_u,
        mass_max,
        rejected_steps,
        diagnostics,
        final_state: state,
    })
}
