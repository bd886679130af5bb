//! A-posteriori check of the mass-decay mechanism.
//!
//! Integrating the cell equation over Ω kills diffusion and taxis, leaving
//! `d/dt ∫u = ∫u^α (a − b ∫u^β)`. Mass can therefore only grow while
//! `∫u^β < a/b`. The IMEX step reproduces this exactly up to round-off, so
//! a record with `∫u^β ≥ a/b` must not be followed by a mass increase.

use serde::Serialize;

use super::DiagnosticsRecord;
use crate::model::ModelParams;

/// Relative slack allowed per unit time on a mass increase.
pub const MASS_EPS_REL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassViolation {
    pub t: f64,
    pub mass_before: f64,
    pub mass_after: f64,
}

/// Stretch of records with `∫u^β < a/b`; `exit_time` is the time of the
/// first record after it, `None` if the series ends inside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthInterval {
    pub start_time: f64,
    pub exit_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassBoundReport {
    pub initial_mass: f64,
    /// Empirical `M₀`: the running maximum of the mass.
    pub m0: f64,
    /// `a/b`, the level of `∫u^β` above which mass cannot grow.
    pub decay_level: f64,
    pub violations: Vec<MassViolation>,
    pub growth_intervals: Vec<GrowthInterval>,
    /// `m0` does not exceed the initial mass or a mass reached right after a
    /// growth record, up to the same slack.
    pub bound_explained: bool,
}

impl MassBoundReport {
    pub fn decay_respected(&self) -> bool {
        self.violations.is_empty()
    }

    /// Time after which `∫u^β ≥ a/b` holds for every remaining record.
    pub fn final_growth_exit(&self) -> Option<f64> {
        match self.growth_intervals.last() {
            None => Some(0.0),
            Some(last) => last.exit_time,
        }
    }
}

pub fn mass_bound_monitor(series: &[DiagnosticsRecord], params: &ModelParams) -> MassBoundReport {
    assert!(!series.is_empty(), "mass monitor needs at least one record");
    let decay_level = params.a / params.b;
    let initial_mass = series[0].mass;
    let m0 = series.iter().map(|r| r.mass).fold(f64::NEG_INFINITY, f64::max);

    let mut violations = Vec::new();
    let mut growth_intervals: Vec<GrowthInterval> = Vec::new();
    let mut in_growth = false;
    let mut bound = initial_mass;
    let mut slack_max: f64 = 0.0;

    for (i, rec) in series.iter().enumerate() {
        let growing = rec.nonlocal < decay_level;
        if growing && !in_growth {
            growth_intervals.push(GrowthInterval {
                start_time: rec.t,
                exit_time: None,
            });
        } else if !growing && in_growth {
            growth_intervals.last_mut().expect("open interval").exit_time = Some(rec.t);
        }
        in_growth = growing;

        let Some(next) = series.get(i + 1) else {
            break;
        };
        let slack = next.dt_used * MASS_EPS_REL * rec.mass;
        slack_max = slack_max.max(slack);
        if growing {
            bound = bound.max(next.mass);
        } else if next.mass > rec.mass + slack {
            violations.push(MassViolation {
                t: next.t,
                mass_before: rec.mass,
                mass_after: next.mass,
            });
        }
    }

    MassBoundReport {
        initial_mass,
        m0,
        decay_level,
        violations,
        growth_intervals,
        bound_explained: m0 <= bound + slack_max * series.len() as f64,
    }
}
