use chemotaxis_core::diagnostics::mass_bound_monitor;
use chemotaxis_core::grid::{Field, Grid};
use chemotaxis_core::model::{ModelParams, ProductionSpec};
use chemotaxis_core::solver::{run, RunStatus, SolverConfig};

fn gaussian(grid: Grid, baseline: f64) -> Field {
    Field::from_fn(grid, |x, _| baseline + 3.0 * (-(x - 0.5f64).powi(2) / 0.005).exp())
}

/// Classical RK4 on the spatially uniform reduction, with a step far below
/// the solver's.
fn uniform_reference(params: &ModelParams, measure: f64, u0: f64, t_end: f64) -> f64 {
    let rhs = |u: f64| params.a * u.powf(params.alpha) - params.b * measure * u.powf(params.alpha + params.beta);
    let steps = 200_000;
    let h = t_end / steps as f64;
    let mut u = u0;
    for _ in 0..steps {
        let k1 = rhs(u);
        let k2 = rhs(u + 0.5 * h * k1);
        let k3 = rhs(u + 0.5 * h * k2);
        let k4 = rhs(u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    u
}

#[test]
fn zero_data_stays_zero() {
    let grid = Grid::new_1d(1.0, 32).unwrap();
    let params = ModelParams::new(1, 0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.5).unwrap();
    let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
    let config = SolverConfig { t_end: 0.1, ..Default::default() };
    let out = run(&params, &spec, &Field::zeros(grid), None, None, &config).unwrap();
    assert_eq!(out.status, RunStatus::CompletedBounded);
    assert!(out.diagnostics.iter().all(|r| r.mass == 0.0 && r.linf_u == 0.0));
}

#[test]
fn uniform_states_follow_scalar_ode() {
    for tau in [0u8, 1] {
        for (a, b) in [(2.0, 1.0), (1.0, 2.0)] {
            let grid = Grid::new_1d(1.0, 64).unwrap();
            let params = ModelParams::new(1, tau, 1.0, 1.0, a, b, 2.0, 1.5).unwrap();
            let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
            let u0 = Field::constant(grid, 1.0);
            let v0 = Field::constant(grid, spec.f_unchecked(1.0));
            let w0 = Field::constant(grid, spec.g_unchecked(1.0));
            let config = SolverConfig { t_end: 5.0, ..Default::default() };
            let out = run(&params, &spec, &u0, Some(&v0), Some(&w0), &config).unwrap();
            let expected = uniform_reference(&params, 1.0, 1.0, 5.0);
            let got = out.final_state.u.linf();
            assert!(((got - expected) / expected).abs() < 1e-4, "tau {tau} a {a} b {b}: {got} vs {expected}");
        }
    }
}

#[test]
fn growth_only_data_blows_up() {
    let grid = Grid::new_1d(1.0, 16).unwrap();
    let params = ModelParams::new(1, 0, 1.0, 1.0, 1.0, 1e-6, 2.0, 1.0).unwrap();
    let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
    let config = SolverConfig { t_end: 5.0, blowup_threshold: 1e3, ..Default::default() };
    let out = run(&params, &spec, &Field::constant(grid, 1.0), None, None, &config).unwrap();
    assert_eq!(out.status, RunStatus::BlowupDetected);
    // u' ≈ u² from 1 reaches 1e3 near t = 0.999
    assert!((out.t_final - 0.999).abs() < 0.01, "{}", out.t_final);
}

#[test]
fn equal_sensitivities_cancel_bitwise() {
    let grid = Grid::new_1d(1.0, 64).unwrap();
    let spec = ProductionSpec::power(1.5, 1.5, 1.0, 1.0).unwrap();
    let u0 = gaussian(grid, 0.2);
    let signal = Field::from_fn(grid, |x, _| 1.0 + 0.5 * (3.0 * x).cos());
    let config = SolverConfig { t_end: 1.0, ..Default::default() };
    let run_with = |chi: f64, tau: u8| {
        let params = ModelParams { n: 1, tau, chi, xi: chi, a: 1.0, b: 1.0, alpha: 2.0, beta: 1.5 };
        run(&params, &spec, &u0, Some(&signal), Some(&signal), &config).unwrap()
    };
    for tau in [0u8, 1] {
        let coupled = run_with(1.0, tau);
        let free = run_with(0.0, tau);
        assert_eq!(coupled.diagnostics.len(), 1001);
        assert_eq!(coupled.final_state.u.values(), free.final_state.u.values());
    }
}

#[test]
fn pure_diffusion_conserves_mass() {
    let grid = Grid::new_2d([1.0, 2.0], [24, 40]).unwrap();
    let params = ModelParams::new(2, 0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.5).unwrap();
    let params = ModelParams { chi: 0.0, xi: 0.0, a: 0.0, b: 0.0, ..params };
    let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
    let u0 = Field::from_fn(grid, |x, y| 1.0 + (-(x * x + y * y) * 10.0).exp());
    let config = SolverConfig { t_end: 0.2, dt: 1e-2, ..Default::default() };
    let out = run(&params, &spec, &u0, None, None, &config).unwrap();
    let m0 = out.diagnostics[0].mass;
    for rec in &out.diagnostics {
        assert!(((rec.mass - m0) / m0).abs() < 1e-12);
    }
}

#[test]
fn parabolic_elliptic_case_a_stays_bounded() {
    let grid = Grid::new_1d(1.0, 128).unwrap();
    let params = ModelParams::new(1, 0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.5).unwrap();
    let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
    let config = SolverConfig { t_end: 20.0, ..Default::default() };
    let out = run(&params, &spec, &gaussian(grid, 0.0), None, None, &config).unwrap();
    assert_eq!(out.status, RunStatus::CompletedBounded);
    assert!(out.sup_linf_u.is_finite());
    assert!(out.t_sup_linf_u < 10.0);
    let report = mass_bound_monitor(&out.diagnostics, &params);
    assert!(report.decay_respected(), "{:?}", report.violations);
    assert!(report.bound_explained);
}

#[test]
fn fully_parabolic_case_b_stays_bounded() {
    let grid = Grid::new_1d(1.0, 128).unwrap();
    let params = ModelParams::new(1, 1, 1.0, 1.0, 1.0, 1.0, 1.5, 1.5).unwrap();
    let spec = ProductionSpec::power(1.0, 1.2, 1.0, 1.0).unwrap();
    let u0 = gaussian(grid, 0.0);
    let v0 = u0.map(|s| spec.f_unchecked(s));
    let w0 = u0.map(|s| spec.g_unchecked(s));
    let config = SolverConfig { t_end: 20.0, ..Default::default() };
    let out = run(&params, &spec, &u0, Some(&v0), Some(&w0), &config).unwrap();
    assert_eq!(out.status, RunStatus::CompletedBounded);
    assert!(mass_bound_monitor(&out.diagnostics, &params).decay_respected());
}

#[test]
fn runs_are_deterministic() {
    let grid = Grid::new_2d([1.0, 1.0], [16, 16]).unwrap();
    let params = ModelParams::new(2, 1, 2.0, 0.5, 1.0, 1.0, 2.0, 2.0).unwrap();
    let spec = ProductionSpec::power(1.0, 1.5, 1.0, 1.0).unwrap();
    let u0 = Field::from_fn(grid, |x, y| 1.0 + 0.5 * (3.0 * x).cos() * (2.0 * y).cos());
    let config = SolverConfig { t_end: 0.2, ..Default::default() };
    let first = run(&params, &spec, &u0, None, None, &config).unwrap();
    let second = run(&params, &spec, &u0, None, None, &config).unwrap();
    assert_eq!(first.diagnostics, second.diagnostics);
    assert_eq!(first.final_state.u.values(), second.final_state.u.values());
}
