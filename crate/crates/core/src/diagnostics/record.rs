use std::borrow::Cow;

use serde::Serialize;

use super::DiagnosticsError;
use crate::grid::{grad_half_power_norm, integrate, integrate_power, Field, GridError};
use crate::model::ModelParams;
use crate::solver::{detect_blowup, SimulationState, SolverConfig};

/// Relative size of negative round-off tolerated in a density field.
pub const POSITIVITY_RTOL: f64 = 1e-12;

/// Per-exponent quantities of a [`DiagnosticsRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KDiagnostics {
    pub k: f64,
    /// `(∫u^k)^{1/k}`
    pub lk_norm: f64,
    /// `e^{τt} ∫u^k`
    pub phi: f64,
    /// `∫|∇u^{k/2}|²`
    pub grad_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub dt_used: f64,
    pub mass: f64,
    pub linf_u: f64,
    pub linf_v: f64,
    pub linf_w: f64,
    /// `∫u^β`
    pub nonlocal: f64,
    pub per_k: Vec<KDiagnostics>,
    pub blowup_flag: bool,
}

/// Exponents monitored when none are configured: `{2, n+1, 2n, 8}`,
/// deduplicated and sorted.
pub fn default_k_set(n: u32) -> Vec<f64> {
    let n = f64::from(n);
    let mut ks = vec![2.0, n + 1.0, 2.0 * n, 8.0];
    ks.retain(|&k| k >= 2.0);
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    ks
}

/// Returns `u` itself when it is nonnegative, its positive part when the
/// only negative nodes are round-off (above `−1e-12·‖u‖∞`), and an error
/// otherwise.
pub fn nonnegative_part(u: &Field) -> Result<Cow<'_, Field>, GridError> {
    if !u.is_finite() {
        u.check_nonnegative()?;
    }
    let min = u.min();
    if min >= 0.0 {
        return Ok(Cow::Borrowed(u));
    }
    if min >= -POSITIVITY_RTOL * u.linf() {
        return Ok(Cow::Owned(u.map(|x| x.max(0.0))));
    }
    u.check_nonnegative()?;
    unreachable!("a negative minimum fails the nonnegativity check")
}

/// Evaluates every monitored functional on the current state.
pub fn record(
    state: &SimulationState,
    params: &ModelParams,
    config: &SolverConfig,
) -> Result<DiagnosticsRecord, DiagnosticsError> {
    let blowup_flag = detect_blowup(&state.u, config);
    let ks = config.k_set(params.n);
    if !state.u.is_finite() {
        return Ok(non_finite_record(state, ks, blowup_flag));
    }
    let u = nonnegative_part(&state.u)?;
    let weight = (params.tau_f64() * state.t).exp();
    let mut per_k = Vec::with_capacity(ks.len());
    for k in ks {
        let lk = integrate_power(&u, k)?;
        per_k.push(KDiagnostics {
            k,
            lk_norm: lk.powf(1.0 / k),
            phi: weight * lk,
            grad_term: grad_half_power_norm(&u, k)?,
        });
    }
    Ok(DiagnosticsRecord {
        t: state.t,
        dt_used: state.last_dt,
        mass: integrate(&state.u),
        linf_u: state.u.linf(),
        linf_v: state.v.linf(),
        linf_w: state.w.linf(),
        nonlocal: integrate_power(&u, params.beta)?,
        per_k,
        blowup_flag,
    })
}

fn non_finite_record(state: &SimulationState, ks: Vec<f64>, blowup_flag: bool) -> DiagnosticsRecord {
    let per_k = ks
        .into_iter()
        .map(|k| KDiagnostics {
            k,
            lk_norm: f64::NAN,
            phi: f64::NAN,
            grad_term: f64::NAN,
        })
        .collect();
    DiagnosticsRecord {
        t: state.t,
        dt_used: state.last_dt,
        mass: f64::NAN,
        linf_u: state.u.linf(),
        linf_v: state.v.linf(),
        linf_w: state.w.linf(),
        nonlocal: f64::NAN,
        per_k,
        blowup_flag,
    }
}
