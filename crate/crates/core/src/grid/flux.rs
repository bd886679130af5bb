use std::fmt::Debug;

/// Rule for the density carried across a cell face by the taxis flux
/// `u ∇s`.
pub trait FluxScheme: Debug + Send + Sync {
    /// Registry name.
    fn name(&self) -> &'static str;

    /// Face density given the densities left and right of the face and the
    /// potential jump `s_right − s_left`.
    fn face_density(&self, left: f64, right: f64, jump: f64) -> f64;
}

/// Arithmetic face average; second order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CenteredFlux;

impl FluxScheme for CenteredFlux {
    fn name(&self) -> &'static str {
        "centered"
    }

    fn face_density(&self, left: f64, right: f64, _jump: f64) -> f64 {
        0.5 * (left + right)
    }
}

/// First-order donor cell. In `∇·(u∇s)` material moves down the potential,
/// so a negative jump carries the left density.
#[derive(Debug, Clone, Copy, Default)]
pub struct UpwindFlux;

impl FluxScheme for UpwindFlux {
    fn name(&self) -> &'static str {
        "upwind"
    }

    fn face_density(&self, left: f64, right: f64, jump: f64) -> f64 {
        if jump < 0.0 {
            left
        } else {
            right
        }
    }
}
