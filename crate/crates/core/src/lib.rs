//! Simulation and analysis toolkit for a three-species attraction-repulsion
//! chemotaxis system with nonlocal logistic damping:
//!
//! ```text
//! u_t     = Δu − χ∇·(u∇v) + ξ∇·(u∇w) + a u^α − b u^α ∫_Ω u^β
//! τ v_t   = Δv − v + f(u)
//! τ w_t   = Δw − w + g(u)
//! ```
//!
//! with homogeneous Neumann conditions on a rectangle. `τ = 0` is the
//! parabolic-elliptic variant, `τ = 1` the fully parabolic one.
//!
//! * [`model`]: parameters, production laws and the boundedness-regime classifier.
//! * [`grid`]: vertex-centered grids, Neumann operators, trapezoid quadrature, snapshots.
//! * [`linalg`]: conjugate gradients for the shifted Neumann Laplacian.
//! * [`solver`]: IMEX time stepping with blow-up detection.
//! * [`diagnostics`]: mass, L^k norms, energy functionals and interpolation audits.
//! * [`registry`]: name-keyed lookup of interchangeable numerical schemes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod registry;
pub mod solver;

pub use diagnostics::{DiagnosticsRecord, GnAudit};
pub use grid::{Field, Grid};
pub use model::{ModelParams, ProductionSpec, RegimeVerdict};
pub use solver::{RunOutcome, RunStatus, SimulationState, SolverConfig};
