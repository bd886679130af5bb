use serde::{Deserialize, Serialize};

use super::ModelError;

/// Coefficients and exponents of the cell equation plus the regime flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Spatial dimension used by the classifier; the solver supports 1 and 2.
    pub n: u32,
    /// 0 for the parabolic-elliptic system, 1 for the fully parabolic one.
    pub tau: u8,
    pub chi: f64,
    pub xi: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ModelParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: u32,
        tau: u8,
        chi: f64,
        xi: f64,
        a: f64,
        b: f64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self, ModelError> {
        let params = Self {
            n,
            tau,
            chi,
            xi,
            a,
            b,
            alpha,
            beta,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let err = |name, value, requirement| {
            Err(ModelError::Coefficient {
                name,
                value,
                requirement,
            })
        };
        if self.n < 1 {
            return err("n", self.n as f64, "spatial dimension must be at least 1");
        }
        if self.tau > 1 {
            return err("tau", self.tau as f64, "tau must be 0 or 1");
        }
        for (name, value) in [("chi", self.chi), ("xi", self.xi), ("a", self.a), ("b", self.b)] {
            if !(value > 0.0 && value.is_finite()) {
                return err(name, value, "must be a finite positive number");
            }
        }
        for (name, value) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(value >= 1.0 && value.is_finite()) {
                return err(name, value, "must be finite and at least 1");
            }
        }
        Ok(())
    }

    /// τ as a number, for the e^{τt} weight and the signal time derivative.
    pub fn tau_f64(&self) -> f64 {
        f64::from(self.tau)
    }

    pub fn is_fully_parabolic(&self) -> bool {
        self.tau == 1
    }
}
