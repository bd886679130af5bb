//! Run configuration: a TOML document with the sections `[domain]`,
//! `[params]`, `[production]`, `[initial]` (with `[initial.u]`,
//! `[initial.v]`, `[initial.w]`), `[solver]`, `[output]`, `[sweep]` and
//! `[audit]`.

use std::path::{Path, PathBuf};

use chemotaxis_core::grid::{Field, Grid, GridError};
use chemotaxis_core::model::{ModelError, ModelParams, ProductionKind, ProductionSpec, TabulatedLaw};
use chemotaxis_core::solver::{SolverConfig, SolverError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::initial::{InitialData, InitialError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("[params] {0}")]
    Params(ModelError),
    #[error("[production] {0}")]
    Production(ModelError),
    #[error("[domain] {0}")]
    Domain(GridError),
    #[error("[solver] {0}")]
    Solver(SolverError),
    #[error("[initial.{component}] {source}")]
    Initial {
        component: &'static str,
        source: InitialError,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    /// Side lengths; one entry per spatial axis.
    pub lengths: Vec<f64>,
    /// Nodes per axis, boundary nodes included.
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    /// Dimension entering the regime conditions; defaults to the domain's.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub tau: u8,
    pub chi: f64,
    pub xi: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProductionConfig {
    Power {
        ell: f64,
        rho: f64,
        #[serde(default = "one")]
        k1: f64,
        #[serde(default = "one")]
        k2: f64,
    },
    Tabulated {
        ell: f64,
        rho: f64,
        #[serde(default = "one")]
        k1: f64,
        #[serde(default = "one")]
        k2: f64,
        s: Vec<f64>,
        f: Vec<f64>,
        g: Vec<f64>,
    },
}

impl ProductionConfig {
    pub fn ell(&self) -> f64 {
        match self {
            Self::Power { ell, .. } | Self::Tabulated { ell, .. } => *ell,
        }
    }

    pub fn rho(&self) -> f64 {
        match self {
            Self::Power { rho, .. } | Self::Tabulated { rho, .. } => *rho,
        }
    }

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        match self {
            Self::Power { ell, rho, k1, k2 } | Self::Tabulated { ell, rho, k1, k2, .. } => match name {
                "ell" => Some(ell),
                "rho" => Some(rho),
                "k1" => Some(k1),
                "k2" => Some(k2),
                _ => None,
            },
        }
    }

    /// The production laws without any validation.
    pub fn spec_unchecked(&self) -> ProductionSpec {
        match self.clone() {
            Self::Power { ell, rho, k1, k2 } => ProductionSpec {
                ell,
                rho,
                k1,
                k2,
                kind: ProductionKind::PowerPrototype,
            },
            Self::Tabulated { ell, rho, k1, k2, s, f, g } => ProductionSpec {
                ell,
                rho,
                k1,
                k2,
                kind: ProductionKind::CustomTabulated(TabulatedLaw { s, f, g }),
            },
        }
    }

    pub fn spec(&self) -> Result<ProductionSpec, ModelError> {
        match self.clone() {
            Self::Power { ell, rho, k1, k2 } => ProductionSpec::power(ell, rho, k1, k2),
            Self::Tabulated { ell, rho, k1, k2, s, f, g } => {
                ProductionSpec::tabulated(ell, rho, k1, k2, TabulatedLaw { s, f, g })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    /// Seed for randomized data that does not carry its own.
    #[serde(default)]
    pub seed: u64,
    pub u: InitialData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<InitialData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<InitialData>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub diagnostics_csv: String,
    pub summary_json: String,
    /// Write a snapshot of `u` every this many accepted steps; 0 disables.
    pub snapshot_every: usize,
    pub sweep_csv: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            diagnostics_csv: "diagnostics.csv".into(),
            summary_json: "summary.json".into(),
            snapshot_every: 0,
            sweep_csv: "sweep.csv".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub classify_only: bool,
    pub axes: Vec<SweepAxis>,
}

/// One audited interpolation: exponent `k`, growth exponent `ρ`, dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditTuple(pub f64, pub f64, pub u32);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    pub tuples: Vec<AuditTuple>,
    #[serde(default = "AuditConfig::default_samples")]
    pub samples: usize,
    #[serde(default = "AuditConfig::default_counts")]
    pub counts: usize,
    #[serde(default)]
    pub seed: u64,
}

impl AuditConfig {
    fn default_samples() -> usize {
        50
    }

    fn default_counts() -> usize {
        64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub domain: DomainConfig,
    pub params: ParamsConfig,
    pub production: ProductionConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditConfig>,
}

/// Parameters a sweep axis may vary.
pub const SWEEP_PARAMETERS: &[&str] = &[
    "tau", "n", "chi", "xi", "a", "b", "alpha", "beta", "ell", "rho", "k1", "k2", "dt", "t_end",
];

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = toml::from_str(text)?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

impl RunConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configs always serialize")
    }

    pub fn grid(&self) -> Result<Grid, GridError> {
        Grid::new(&self.domain.lengths, &self.domain.counts)
    }

    pub fn dimension(&self) -> u32 {
        self.params.n.unwrap_or(self.domain.lengths.len() as u32)
    }

    /// Model parameters exactly as written, without validation.
    pub fn model_params(&self) -> ModelParams {
        let p = &self.params;
        ModelParams {
            n: self.dimension(),
            tau: p.tau,
            chi: p.chi,
            xi: p.xi,
            a: p.a,
            b: p.b,
            alpha: p.alpha,
            beta: p.beta,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let grid = self.grid().map_err(ConfigError::Domain)?;
        let n = self.dimension();
        if !(1..=3).contains(&n) {
            return Err(ConfigError::Invalid(format!("[params] n = {n}: must be 1, 2 or 3")));
        }
        self.model_params().validate().map_err(ConfigError::Params)?;
        self.production.spec().map_err(ConfigError::Production)?;
        self.solver.validate().map_err(ConfigError::Solver)?;

        let components = [
            ("u", Some(&self.initial.u)),
            ("v", self.initial.v.as_ref()),
            ("w", self.initial.w.as_ref()),
        ];
        for (component, data) in components {
            if let Some(data) = data {
                data.validate(&grid).map_err(|source| ConfigError::Initial { component, source })?;
            }
        }
        if self.params.tau == 1 && (self.initial.v.is_none() || self.initial.w.is_none()) {
            return Err(ConfigError::Invalid(
                "tau = 1 needs [initial.v] and [initial.w] (signal initial data)".into(),
            ));
        }

        if let Some(sweep) = &self.sweep {
            for axis in &sweep.axes {
                check_axis(axis)?;
            }
        }
        if let Some(audit) = &self.audit {
            if audit.samples == 0 {
                return Err(ConfigError::Invalid("[audit] samples must be positive".into()));
            }
            if audit.counts < chemotaxis_core::grid::MIN_COUNT {
                return Err(ConfigError::Invalid(format!(
                    "[audit] counts = {} is below the minimum {}",
                    audit.counts,
                    chemotaxis_core::grid::MIN_COUNT
                )));
            }
            for &AuditTuple(k, rho, n) in &audit.tuples {
                if !(k > 1.0 && rho > 1.0 && (1..=3).contains(&n)) {
                    return Err(ConfigError::Invalid(format!(
                        "[audit] tuple ({k}, {rho}, {n}) needs k > 1, rho > 1 and n in 1..=3"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Overrides one numeric parameter by name.
    pub fn set_parameter(&mut self, name: &str, value: f64) -> Result<(), ConfigError> {
        let integral = |what: &str, max: f64| {
            if value.fract() == 0.0 && (0.0..=max).contains(&value) {
                Ok(value)
            } else {
                Err(ConfigError::Invalid(format!("{what} = {value}: must be an integer in 0..={max}")))
            }
        };
        let p = &mut self.params;
        match name {
            "tau" => p.tau = integral("tau", 1.0)? as u8,
            "n" => p.n = Some(integral("n", 3.0)? as u32),
            "chi" => p.chi = value,
            "xi" => p.xi = value,
            "a" => p.a = value,
            "b" => p.b = value,
            "alpha" => p.alpha = value,
            "beta" => p.beta = value,
            "dt" => self.solver.dt = value,
            "t_end" => self.solver.t_end = value,
            other => match self.production.slot(other) {
                Some(slot) => *slot = value,
                None => {
                    return Err(ConfigError::Invalid(format!(
                        "unknown sweep parameter '{other}' (available: {})",
                        SWEEP_PARAMETERS.join(", ")
                    )))
                }
            },
        }
        Ok(())
    }

    /// Generates `(u₀, v₀, w₀)`; the signal data are `None` for `τ = 0`.
    pub fn initial_fields(&self) -> Result<(Field, Option<Field>, Option<Field>), ConfigError> {
        let grid = self.grid().map_err(ConfigError::Domain)?;
        let make = |component: &'static str, salt: u64, data: &InitialData| {
            data.realize(&grid, self.initial.seed.wrapping_add(salt))
                .map_err(|source| ConfigError::Initial { component, source })
        };
        let u = make("u", 0, &self.initial.u)?;
        if self.params.tau == 0 {
            return Ok((u, None, None));
        }
        let v = self.initial.v.as_ref().map(|d| make("v", 1, d)).transpose()?;
        let w = self.initial.w.as_ref().map(|d| make("w", 2, d)).transpose()?;
        Ok((u, v, w))
    }
}

fn check_axis(axis: &SweepAxis) -> Result<(), ConfigError> {
    if !SWEEP_PARAMETERS.contains(&axis.name.as_str()) {
        return Err(ConfigError::Invalid(format!(
            "unknown sweep parameter '{}' (available: {})",
            axis.name,
            SWEEP_PARAMETERS.join(", ")
        )));
    }
    if axis.values.is_empty() {
        return Err(ConfigError::Invalid(format!("sweep axis '{}' has no values", axis.name)));
    }
    Ok(())
}

/// Parses `name=v1,v2,...`.
pub fn parse_axis(text: &str) -> Result<SweepAxis, ConfigError> {
    let (name, values) = text
        .split_once('=')
        .ok_or_else(|| ConfigError::Invalid(format!("axis '{text}' is not of the form name=v1,v2,...")))?;
    let values = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| ConfigError::Invalid(format!("axis '{name}': '{v}' is not a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let axis = SweepAxis {
        name: name.trim().to_string(),
        values,
    };
    check_axis(&axis)?;
    Ok(axis)
}
