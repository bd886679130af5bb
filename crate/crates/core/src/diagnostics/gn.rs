//! Gagliardo–Nirenberg exponent formulas and empirical constants.
//!
//! Two interpolations appear in the L^k energy estimates:
//!
//! * `‖φ‖_{L^ρ}^{k+ρ}` against `‖∇φ^{k/2}‖₂` and `‖φ‖₁`, with
//!   `θ = k(1 − 1/ρ)/(k − 1 + 2/n)`; the gradient enters with power
//!   `(k+ρ)θ/k`, which must stay below 1 for the Young step.
//! * `∫φ^k` against the same pieces, with `θ = (k/2 − 1/2)/(k/2 − 1/2 + 1/n)`.
//!
//! The embedding constant itself is not computable, so [`audit_gn_on_field`]
//! reports the smallest constant that makes the inequality hold on a given
//! sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::DiagnosticsError;
use crate::grid::{grad_half_power_norm, integrate, integrate_power, Field, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GnExponents {
    pub theta: f64,
    /// `(k+ρ)θ/k`
    pub gradient_exponent: f64,
    /// Both `theta` and `gradient_exponent` lie strictly inside (0, 1).
    pub admissible: bool,
}

fn in_open_unit(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

/// Exponents for interpolating `‖φ‖_{L^ρ}` between `‖∇φ^{k/2}‖₂` and `‖φ‖₁`.
pub fn gn_theta_lrho(k: f64, rho: f64, n: u32) -> GnExponents {
    let n = f64::from(n);
    let theta = k * (1.0 - 1.0 / rho) / (k - 1.0 + 2.0 / n);
    let gradient_exponent = (k + rho) * theta / k;
    GnExponents {
        theta,
        gradient_exponent,
        admissible: in_open_unit(theta) && in_open_unit(gradient_exponent),
    }
}

/// Exponent for interpolating `∫φ^k` between `‖∇φ^{k/2}‖₂` and `‖φ‖₁`.
pub fn gn_theta_lk(k: f64, n: u32) -> f64 {
    let half = 0.5 * k - 0.5;
    half / (half + 1.0 / f64::from(n))
}

/// Smallest `k₀` such that every `k > k₀` makes [`gn_theta_lrho`] admissible.
///
/// `(k+ρ)θ/k < 1` reduces to `k > ρ(ρ − 2/n)` and `θ < 1` to
/// `k > ρ(1 − 2/n)`, which is weaker since `ρ > 1`; `k > 1` keeps the
/// denominators positive.
pub fn gn_k_floor(rho: f64, n: u32) -> f64 {
    (rho * (rho - 2.0 / f64::from(n))).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GnAudit {
    pub k: f64,
    pub rho: f64,
    pub n: u32,
    pub theta: f64,
    pub gradient_exponent: f64,
    /// `(∫φ^ρ)^{(k+ρ)/ρ}`
    pub lhs: f64,
    /// `∫|∇φ^{k/2}|²`
    pub gradient_piece: f64,
    /// `∫φ`
    pub mass: f64,
    /// `gradient_piece^{(k+ρ)θ/k} · mass^{(k+ρ)(1−θ)}`
    pub rhs_gradient_term: f64,
    /// `mass^{k+ρ}`
    pub rhs_mass_term: f64,
    /// `lhs / (rhs_gradient_term + rhs_mass_term)`
    pub implied_constant: f64,
}

/// Evaluates both sides of the `L^ρ` interpolation inequality on `phi`.
pub fn audit_gn_on_field(phi: &Field, k: f64, rho: f64, n: u32) -> Result<GnAudit, DiagnosticsError> {
    phi.check_nonnegative()?;
    if phi.max() == 0.0 {
        return Err(DiagnosticsError::Degenerate("audit field is identically zero"));
    }
    let exps = gn_theta_lrho(k, rho, n);
    let total = k + rho;
    let lhs = integrate_power(phi, rho)?.powf(total / rho);
    let gradient_piece = grad_half_power_norm(phi, k)?;
    let mass = integrate(phi);
    let rhs_gradient_term =
        gradient_piece.powf(exps.gradient_exponent) * mass.powf(total * (1.0 - exps.theta));
    let rhs_mass_term = mass.powf(total);
    Ok(GnAudit {
        k,
        rho,
        n,
        theta: exps.theta,
        gradient_exponent: exps.gradient_exponent,
        lhs,
        gradient_piece,
        mass,
        rhs_gradient_term,
        rhs_mass_term,
        implied_constant: lhs / (rhs_gradient_term + rhs_mass_term),
    })
}

/// Smooth positive field: a unit baseline plus a few random cosine modes
/// per axis (all Neumann-compatible), shifted up if needed to stay at or
/// above 0.05.
pub fn smooth_random_field(grid: Grid, rng: &mut impl Rng) -> Field {
    const MODES: usize = 6;
    let mut coeffs = [[0.0f64; MODES]; 2];
    for axis_coeffs in coeffs.iter_mut().take(grid.dim()) {
        for (m, c) in axis_coeffs.iter_mut().enumerate() {
            *c = rng.gen_range(-1.0..1.0) / ((m + 1) * (m + 1)) as f64;
        }
    }
    let lengths = grid.lengths().to_vec();
    let dim = grid.dim();
    let raw = Field::from_fn(grid, |x, y| {
        let mut v = 1.0;
        for (axis, pos) in [x, y].into_iter().enumerate().take(dim) {
            for (m, c) in coeffs[axis].iter().enumerate() {
                let wave = std::f64::consts::PI * (m + 1) as f64 / lengths[axis];
                v += c * (wave * pos).cos();
            }
        }
        v
    });
    let shift = (0.05 - raw.min()).max(0.0);
    raw.map(|v| v + shift)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GnAuditStats {
    pub samples: usize,
    pub min_constant: f64,
    pub max_constant: f64,
    pub mean_constant: f64,
}

/// Implied-constant statistics over `samples` seeded random smooth fields.
pub fn audit_gn_sample(
    grid: Grid,
    k: f64,
    rho: f64,
    n: u32,
    samples: usize,
    seed: u64,
) -> Result<GnAuditStats, DiagnosticsError> {
    if samples == 0 {
        return Err(DiagnosticsError::Degenerate("audit needs at least one sample"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constants = Vec::with_capacity(samples);
    for _ in 0..samples {
        let phi = smooth_random_field(grid, &mut rng);
        constants.push(audit_gn_on_field(&phi, k, rho, n)?.implied_constant);
    }
    Ok(GnAuditStats {
        samples,
        min_constant: constants.iter().copied().fold(f64::INFINITY, f64::min),
        max_constant: constants.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_constant: constants.iter().sum::<f64>() / samples as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lrho_exponent_values() {
        let e = gn_theta_lrho(4.0, 2.0, 2);
        assert_eq!((e.theta, e.gradient_exponent), (0.5, 0.75));
        assert!(e.admissible);
        let e = gn_theta_lrho(2.0, 2.0, 1);
        assert!((e.theta - 1.0 / 3.0).abs() < 1e-15);
        assert!((e.gradient_exponent - 2.0 / 3.0).abs() < 1e-15);
        let e = gn_theta_lrho(4.0, 1.0 + 1e-12, 2);
        assert!(e.theta < 1e-11);
    }

    #[test]
    fn lk_exponent_values() {
        assert_eq!(gn_theta_lk(3.0, 1), 0.5);
        assert_eq!(gn_theta_lk(2.0, 2), 0.5);
        assert!(gn_theta_lk(1.0 + 1e-12, 3) < 1e-11);
    }

    #[test]
    fn floor_is_sharp() {
        for &(rho, n) in &[(2.0, 2u32), (4.0, 1), (4.0, 3), (3.0, 2)] {
            let floor = gn_k_floor(rho, n);
            assert!(floor > 1.0);
            // exponent equals one at the floor, falls below just above it
            assert!((gn_theta_lrho(floor, rho, n).gradient_exponent - 1.0).abs() < 1e-12);
            assert!(gn_theta_lrho(floor * (1.0 + 1e-9), rho, n).admissible);
            assert!(!gn_theta_lrho(floor * (1.0 - 1e-9), rho, n).admissible);
        }
    }

    #[test]
    fn constant_field_saturates_mass_term() {
        let grid = Grid::new_1d(1.0, 64).unwrap();
        let a = audit_gn_on_field(&Field::constant(grid, 1.0), 4.0, 2.0, 1).unwrap();
        assert_eq!(a.gradient_piece, 0.0);
        assert_eq!((a.lhs, a.mass), (1.0, 1.0));
        assert_eq!(a.implied_constant, 1.0);
        let b = audit_gn_on_field(&Field::constant(grid, 7.5), 4.0, 2.0, 1).unwrap();
        assert!((b.implied_constant - 1.0).abs() < 1e-12);
    }

    #[test]
    fn implied_constant_is_scale_invariant() {
        let grid = Grid::new_1d(1.0, 128).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let phi = smooth_random_field(grid, &mut rng);
            let base = audit_gn_on_field(&phi, 4.0, 2.0, 1).unwrap().implied_constant;
            for c in [0.1, 10.0] {
                let scaled = audit_gn_on_field(&phi.map(|x| c * x), 4.0, 2.0, 1).unwrap();
                assert!((scaled.implied_constant - base).abs() < 1e-10 * base);
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let grid = Grid::new_1d(1.0, 16).unwrap();
        assert!(matches!(
            audit_gn_on_field(&Field::zeros(grid), 4.0, 2.0, 1),
            Err(DiagnosticsError::Degenerate(_))
        ));
        let mut neg = Field::constant(grid, 1.0);
        neg.values_mut()[0] = -1.0;
        assert!(matches!(
            audit_gn_on_field(&neg, 4.0, 2.0, 1),
            Err(DiagnosticsError::Positivity(_))
        ));
        assert!(audit_gn_sample(grid, 4.0, 2.0, 1, 0, 1).is_err());
    }

    #[test]
    fn random_fields_are_positive_and_seeded() {
        let grid = Grid::new_2d([1.0, 2.0], [16, 20]).unwrap();
        let a = smooth_random_field(grid, &mut ChaCha8Rng::seed_from_u64(1));
        let b = smooth_random_field(grid, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
        assert!(a.min() >= 0.05 - 1e-15);
    }

    #[test]
    fn sample_statistics_are_finite_and_reproducible() {
        let grid = Grid::new_1d(1.0, 128).unwrap();
        let s = audit_gn_sample(grid, 4.0, 2.0, 1, 50, 42).unwrap();
        assert!(s.max_constant.is_finite() && s.min_constant > 0.0);
        assert!(s.min_constant <= s.mean_constant && s.mean_constant <= s.max_constant);
        assert_eq!(s, audit_gn_sample(grid, 4.0, 2.0, 1, 50, 42).unwrap());
    }
}
