//! Name-keyed registries of interchangeable numerical schemes.
//!
//! The solver never names a concrete scheme: it asks a registry for the
//! entry selected by configuration (`upwind`, `tau`) and works through the
//! trait object. Additional schemes are added with [`Registry::register`].

use std::fmt;

use thiserror::Error;

use crate::grid::{CenteredFlux, FluxScheme, UpwindFlux};
use crate::solver::{EllipticSignal, ParabolicSignal, SignalModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} '{name}' (available: {available})")]
pub struct RegistryError {
    pub kind: &'static str,
    pub name: String,
    pub available: String,
}

type Constructor<T> = fn() -> Box<T>;

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Constructor<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds or replaces the entry called `name`.
    pub fn register(&mut self, name: &'static str, ctor: Constructor<T>) -> &mut Self {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = ctor,
            None => self.entries.push((name, ctor)),
        }
        self
    }

    pub fn create(&self, name: &str) -> Result<Box<T>, RegistryError> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, ctor)| ctor())
            .ok_or_else(|| RegistryError {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.iter().any(|(n, _)| *n == name)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

impl<T: ?Sized> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("kind", &self.kind)
            .field("entries", &self.names())
            .finish()
    }
}

/// Face-density rules for the taxis flux: `centered` (default) and `upwind`.
pub fn flux_schemes() -> Registry<dyn FluxScheme> {
    let mut reg: Registry<dyn FluxScheme> = Registry::new("flux scheme");
    reg.register("centered", || Box::new(CenteredFlux))
        .register("upwind", || Box::new(UpwindFlux));
    reg
}

/// Signal dynamics: `elliptic` (τ = 0) and `parabolic` (τ = 1).
pub fn signal_models() -> Registry<dyn SignalModel> {
    let mut reg: Registry<dyn SignalModel> = Registry::new("signal model");
    reg.register("elliptic", || Box::new(EllipticSignal))
        .register("parabolic", || Box::new(ParabolicSignal));
    reg
}

/// Registry key of the signal model matching the regime flag.
pub fn signal_model_name(tau: u8) -> &'static str {
    if tau == 0 {
        "elliptic"
    } else {
        "parabolic"
    }
}
