//! Model parameters, signal production laws and the regime classifier.

mod params;
mod production;
mod regime;

pub use params::ModelParams;
pub use production::{EnvelopeReport, EnvelopeSample, ProductionKind, ProductionSpec, TabulatedLaw};
pub use regime::{classify_regime, Case, ComparisonRegime, Margin, MarginGroup, RegimeVerdict, Relation, Theorem};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A coefficient or exponent violates the standing structural assumptions.
    #[error("{name} = {value}: {requirement} (coefficient assumption)")]
    Coefficient {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// A production-law constant or table violates the growth envelope assumption.
    #[error("{0} (production envelope assumption)")]
    Production(String),
    #[error("production laws are only defined for s >= 0, got {0}")]
    NegativeArgument(f64),
}
