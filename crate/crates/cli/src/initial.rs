use std::f64::consts::PI;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use chemotaxis_core::grid::snapshot::{read_snapshot, SnapshotError};
use chemotaxis_core::grid::{Field, Grid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cosine modes per axis in a perturbation.
const PERTURBATION_MODES: usize = 4;

#[derive(Debug, Error)]
pub enum InitialError {
    #[error("{0}")]
    Constraint(String),
    #[error("cannot read snapshot {path}: {source}")]
    Snapshot {
        path: PathBuf,
        source: SnapshotError,
    },
    #[error("snapshot {0} does not live on the configured grid")]
    SnapshotGrid(PathBuf),
}

/// Initial profile of one component. Every variant is nonnegative by
/// construction once [`InitialData::validate`] has passed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    Constant {
        value: f64,
    },
    /// `baseline + amplitude·exp(−|x − center|²/(2·width²))`
    GaussianBump {
        center: Vec<f64>,
        width: f64,
        amplitude: f64,
        #[serde(default)]
        baseline: f64,
    },
    /// `baseline + amplitude·ψ` with a seeded smooth `ψ`, `|ψ| ≤ 1`, that
    /// satisfies the Neumann condition.
    PerturbedConstant {
        baseline: f64,
        amplitude: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    FromSnapshot {
        path: PathBuf,
    },
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), InitialError> {
    if ok {
        Ok(())
    } else {
        Err(InitialError::Constraint(msg()))
    }
}

fn nonneg(x: f64) -> bool {
    x >= 0.0 && x.is_finite()
}

impl InitialData {
    pub fn validate(&self, grid: &Grid) -> Result<(), InitialError> {
        match self {
            Self::Constant { value } => require(nonneg(*value), || format!("value = {value}: must be nonnegative")),
            Self::GaussianBump {
                center,
                width,
                amplitude,
                baseline,
            } => {
                require(center.len() == grid.dim(), || {
                    format!("center has {} coordinates, the domain has {}", center.len(), grid.dim())
                })?;
                require(center.iter().all(|c| c.is_finite()), || "center must be finite".into())?;
                require(*width > 0.0 && width.is_finite(), || format!("width = {width}: must be positive"))?;
                require(nonneg(*amplitude), || format!("amplitude = {amplitude}: must be nonnegative"))?;
                require(nonneg(*baseline), || format!("baseline = {baseline}: must be nonnegative"))
            }
            Self::PerturbedConstant { baseline, amplitude, .. } => {
                require(nonneg(*baseline), || format!("baseline = {baseline}: must be nonnegative"))?;
                require(nonneg(*amplitude) && amplitude <= baseline, || {
                    format!("amplitude = {amplitude}: must lie in [0, baseline] to keep the field nonnegative")
                })
            }
            Self::FromSnapshot { .. } => Ok(()),
        }
    }

    /// Builds the field; `seed` is used when the data carry no seed of their own.
    pub fn realize(&self, grid: &Grid, seed: u64) -> Result<Field, InitialError> {
        self.validate(grid)?;
        let field = match self {
            Self::Constant { value } => Field::constant(*grid, *value),
            Self::GaussianBump {
                center,
                width,
                amplitude,
                baseline,
            } => {
                let c = [center[0], center.get(1).copied().unwrap_or(0.0)];
                Field::from_fn(*grid, |x, y| {
                    let r2 = (x - c[0]).powi(2) + (y - c[1]).powi(2);
                    baseline + amplitude * (-r2 / (2.0 * width * width)).exp()
                })
            }
            Self::PerturbedConstant {
                baseline,
                amplitude,
                seed: own,
            } => {
                let psi = smooth_perturbation(grid, own.unwrap_or(seed));
                psi.map(|p| baseline + amplitude * p)
            }
            Self::FromSnapshot { path } => {
                let file = File::open(path).map_err(|e| InitialError::Snapshot {
                    path: path.clone(),
                    source: SnapshotError::Io(e),
                })?;
                let field = read_snapshot(BufReader::new(file)).map_err(|source| InitialError::Snapshot {
                    path: path.clone(),
                    source,
                })?;
                if field.grid() != grid {
                    return Err(InitialError::SnapshotGrid(path.clone()));
                }
                field
                    .check_nonnegative()
                    .map_err(|e| InitialError::Constraint(format!("snapshot {}: {e}", path.display())))?;
                field
            }
        };
        Ok(field)
    }
}

/// Random cosine series normalized so that its sup norm is at most 1.
fn smooth_perturbation(grid: &Grid, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lengths = [grid.lengths()[0], grid.lengths().get(1).copied().unwrap_or(1.0)];
    let mut terms = Vec::new();
    for axis in 0..grid.dim() {
        for mode in 1..=PERTURBATION_MODES {
            terms.push((axis, mode as f64, rng.gen_range(-1.0..=1.0)));
        }
    }
    let total: f64 = terms.iter().map(|t| f64::abs(t.2)).sum();
    let scale = if total > 0.0 { 1.0 / total } else { 0.0 };
    Field::from_fn(*grid, |x, y| {
        let pos = [x, y];
        terms
            .iter()
            .map(|&(axis, m, c)| c * (m * PI * pos[axis] / lengths[axis]).cos())
            .sum::<f64>()
            * scale
    })
}
