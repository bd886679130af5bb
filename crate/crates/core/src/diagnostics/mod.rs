//! Functionals monitored along a trajectory and interpolation-inequality
//! audits.

mod gn;
mod monitor;
mod record;

pub use gn::{
    audit_gn_on_field, audit_gn_sample, gn_k_floor, gn_theta_lk, gn_theta_lrho, smooth_random_field,
    GnAudit, GnAuditStats, GnExponents,
};
pub use monitor::{mass_bound_monitor, GrowthInterval, MassBoundReport, MassViolation};
pub use record::{
    default_k_set, nonnegative_part, record, DiagnosticsRecord, KDiagnostics, POSITIVITY_RTOL,
};

use thiserror::Error;

use crate::grid::GridError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("loss of positivity: {0}")]
    Positivity(#[from] GridError),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
}
