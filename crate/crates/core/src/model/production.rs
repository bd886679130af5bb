use serde::{Deserialize, Serialize};

use super::ModelError;

/// Piecewise-linear signal production laws sampled on a common value grid.
///
/// The first abscissa must be 0 and abscissae must be strictly increasing.
/// Beyond the last sample each law is continued by the power law through the
/// last sample with the envelope exponent (ℓ for `f`, ρ for `g`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedLaw {
    pub s: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
}

impl TabulatedLaw {
    fn check_shape(&self) -> Result<(), ModelError> {
        let bad = |msg: &str| Err(ModelError::Production(msg.to_string()));
        if self.s.len() < 2 {
            return bad("a production table needs at least two samples");
        }
        if self.f.len() != self.s.len() || self.g.len() != self.s.len() {
            return bad("production table columns s, f, g must have equal length");
        }
        if self.s[0] != 0.0 {
            return bad("production table must start at s = 0");
        }
        if self.s.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("production table abscissae must be strictly increasing");
        }
        if self
            .s
            .iter()
            .chain(&self.f)
            .chain(&self.g)
            .any(|x| !x.is_finite())
        {
            return bad("production table entries must be finite");
        }
        Ok(())
    }

    fn eval(&self, values: &[f64], exponent: f64, s: f64) -> f64 {
        let last = self.s.len() - 1;
        if s >= self.s[last] {
            return values[last] * (s / self.s[last]).powf(exponent);
        }
        // first index with abscissa > s; s >= 0 = s[0] so idx >= 1
        let idx = self.s.partition_point(|&x| x <= s);
        let (s0, s1) = (self.s[idx - 1], self.s[idx]);
        let (y0, y1) = (values[idx - 1], values[idx]);
        let t = (s - s0) / (s1 - s0);
        y0 + t * (y1 - y0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProductionKind {
    /// `f(s) = K₁ s^ℓ`, `g(s) = K₂ s^ρ`.
    PowerPrototype,
    CustomTabulated(TabulatedLaw),
}

/// Production laws `f` (attractant) and `g` (repellent) with their envelope
/// constants: `0 ≤ f(s) ≤ K₁ s^ℓ` and `K₂ s^ρ ≤ g(s) ≤ K₂ s (s+1)^{ρ−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductionSpec {
    pub ell: f64,
    pub rho: f64,
    pub k1: f64,
    pub k2: f64,
    pub kind: ProductionKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSample {
    pub s: f64,
    pub f: f64,
    pub g: f64,
    pub f_ok: bool,
    pub g_lower_ok: bool,
    pub g_upper_ok: bool,
}

impl EnvelopeSample {
    pub fn passes(&self) -> bool {
        self.f_ok && self.g_lower_ok && self.g_upper_ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    pub samples: Vec<EnvelopeSample>,
}

impl EnvelopeReport {
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(EnvelopeSample::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EnvelopeSample> {
        self.samples.iter().filter(|s| !s.passes())
    }
}

impl ProductionSpec {
    pub fn power(ell: f64, rho: f64, k1: f64, k2: f64) -> Result<Self, ModelError> {
        let spec = Self {
            ell,
            rho,
            k1,
            k2,
            kind: ProductionKind::PowerPrototype,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Tabulated laws, rejected unless every table node lies inside the envelope.
    pub fn tabulated(
        ell: f64,
        rho: f64,
        k1: f64,
        k2: f64,
        table: TabulatedLaw,
    ) -> Result<Self, ModelError> {
        let spec = Self::tabulated_unchecked(ell, rho, k1, k2, table)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Tabulated laws with only structural checks (shape, ordering, constants).
    /// Useful for auditing candidate tables with [`ProductionSpec::validate_envelope`].
    pub fn tabulated_unchecked(
        ell: f64,
        rho: f64,
        k1: f64,
        k2: f64,
        table: TabulatedLaw,
    ) -> Result<Self, ModelError> {
        table.check_shape()?;
        let spec = Self {
            ell,
            rho,
            k1,
            k2,
            kind: ProductionKind::CustomTabulated(table),
        };
        spec.check_constants()?;
        Ok(spec)
    }

    fn check_constants(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::Production(msg));
        if !(self.rho > 1.0 && self.rho.is_finite()) {
            return bad(format!("rho must exceed 1, got {}", self.rho));
        }
        if !(self.ell > 0.0 && self.ell.is_finite()) {
            return bad(format!("ell must be positive, got {}", self.ell));
        }
        if !(self.k1 > 0.0 && self.k1.is_finite()) {
            return bad(format!("k1 must be positive, got {}", self.k1));
        }
        if !(self.k2 > 0.0 && self.k2.is_finite()) {
            return bad(format!("k2 must be positive, got {}", self.k2));
        }
        Ok(())
    }

    /// Full validation: constants, and for tables the envelope at every node.
    pub fn validate(&self) -> Result<(), ModelError> {
        self.check_constants()?;
        if let ProductionKind::CustomTabulated(table) = &self.kind {
            table.check_shape()?;
            let report = self.validate_envelope(&table.s);
            let first_bad = report.failures().next().copied();
            if let Some(bad) = first_bad {
                let msg = format!(
                    "tabulated laws leave the envelope at s = {} (f = {}, g = {})",
                    bad.s, bad.f, bad.g
                );
                return Err(ModelError::Production(msg));
            }
        }
        Ok(())
    }

    /// Attractant production `f(s)`.
    pub fn eval_f(&self, s: f64) -> Result<f64, ModelError> {
        if !(s >= 0.0) {
            return Err(ModelError::NegativeArgument(s));
        }
        Ok(self.f_unchecked(s))
    }

    /// Repellent production `g(s)`.
    pub fn eval_g(&self, s: f64) -> Result<f64, ModelError> {
        if !(s >= 0.0) {
            return Err(ModelError::NegativeArgument(s));
        }
        Ok(self.g_unchecked(s))
    }

    /// `f(s)` for an argument already known to be nonnegative.
    pub fn f_unchecked(&self, s: f64) -> f64 {
        match &self.kind {
            ProductionKind::PowerPrototype => self.k1 * s.powf(self.ell),
            ProductionKind::CustomTabulated(t) => t.eval(&t.f, self.ell, s),
        }
    }

    /// `g(s)` for an argument already known to be nonnegative.
    pub fn g_unchecked(&self, s: f64) -> f64 {
        match &self.kind {
            ProductionKind::PowerPrototype => self.k2 * s.powf(self.rho),
            ProductionKind::CustomTabulated(t) => t.eval(&t.g, self.rho, s),
        }
    }

    pub fn f_upper(&self, s: f64) -> f64 {
        self.k1 * s.powf(self.ell)
    }

    pub fn g_lower(&self, s: f64) -> f64 {
        self.k2 * s.powf(self.rho)
    }

    pub fn g_upper(&self, s: f64) -> f64 {
        self.k2 * s * (s + 1.0).powf(self.rho - 1.0)
    }

    /// Checks both envelope inequalities at every sample point.
    /// Negative or non-finite samples are reported as failures.
    pub fn validate_envelope(&self, samples: &[f64]) -> EnvelopeReport {
        let samples = samples
            .iter()
            .map(|&s| {
                if !(s >= 0.0) || !s.is_finite() {
                    return EnvelopeSample {
                        s,
                        f: f64::NAN,
                        g: f64::NAN,
                        f_ok: false,
                        g_lower_ok: false,
                        g_upper_ok: false,
                    };
                }
                let f = self.f_unchecked(s);
                let g = self.g_unchecked(s);
                EnvelopeSample {
                    s,
                    f,
                    g,
                    f_ok: f >= 0.0 && f <= self.f_upper(s),
                    g_lower_ok: g >= self.g_lower(s),
                    g_upper_ok: g <= self.g_upper(s),
                }
            })
            .collect();
        EnvelopeReport { samples }
    }
}
