//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use chemotaxis_cli::commands::simulate;
use chemotaxis_cli::config::load_config;
use chemotaxis_core::diagnostics::{gn_k_floor, gn_theta_lk, gn_theta_lrho, smooth_random_field};
use chemotaxis_core::grid::{integrate, laplacian_neumann, weighted_dot, Field, Grid};
use chemotaxis_core::model::{classify_regime, ComparisonRegime, ModelParams, ProductionSpec};
use chemotaxis_core::solver::{run, run_observed, solve_elliptic_signal, RunStatus, SolverConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn params(tau: u8, n: u32, alpha: f64, beta: f64) -> ModelParams {
    ModelParams {
        n,
        tau,
        chi: 1.0,
        xi: 1.0,
        a: 1.0,
        b: 1.0,
        alpha,
        beta,
    }
}

fn regime_truth_table() -> Verdict {
    // (tau, n, alpha, beta, ell, rho, expected label), evaluated by hand
    type Row = (u8, u32, f64, f64, f64, f64, &'static str);
    let theorem_rows: [Row; 16] = [
        (0, 2, 2.0, 1.5, 0.5, 1.2, "PE case A"),
        (0, 2, 2.0, 0.8, 0.5, 1.2, "None"),
        (0, 2, 2.0, 1.0, 0.5, 1.2, "None"),
        (0, 1, 2.0, 1.5, 1.0, 1.2, "PE case A"),
        (0, 2, 1.5, 3.0, 1.0, 1.5, "PE case B"),
        (0, 1, 2.0, 1.5, 1.1, 1.2, "PE case B"),
        (0, 2, 1.5, 1.5, 1.0, 1.5, "None"),
        (0, 2, 2.0, 0.9, 1.0, 1.5, "None"),
        (1, 3, 3.0, 3.5, 1.0, 1.5, "PP case A"),
        (1, 1, 2.5, 1.0, 1.0, 1.5, "PP case A"),
        (1, 3, 3.0, 3.0, 1.0, 1.5, "None"),
        (1, 1, 2.4, 2.0, 1.0, 1.5, "None"),
        (1, 1, 1.5, 1.5, 1.0, 1.2, "PP case B"),
        (1, 1, 1.25, 2.0, 1.0, 1.5, "None"),
        (1, 1, 1.25, 2.5, 1.0, 1.5, "PP case B"),
        (1, 2, 2.0, 5.0, 1.0, 1.5, "None"),
    ];
    let comparison_rows: [(u32, f64, f64, Option<ComparisonRegime>); 6] = [
        (2, 1.5, 2.0, Some(ComparisonRegime::Subquadratic)),
        (2, 1.5, 1.5, None),
        (2, 2.0, 1.5, Some(ComparisonRegime::Superquadratic)),
        (2, 2.5, 0.75, None),
        (1, 1.0, 1.6, Some(ComparisonRegime::Subquadratic)),
        (1, 3.0, 1.5, Some(ComparisonRegime::Superquadratic)),
    ];
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (tau, n, alpha, beta, ell, rho, expected) in theorem_rows {
        let spec = ProductionSpec::power(ell, rho, 1.0, 1.0).unwrap();
        let got = classify_regime(&params(tau, n, alpha, beta), &spec);
        if got.label() != expected || got.both_cases {
            mismatches.push(format!("({tau},{n},{alpha},{beta},{ell},{rho}) gave {}", got.label()));
        }
    }
    for (n, alpha, beta, expected) in comparison_rows {
        let spec = ProductionSpec::power(1.0, 1.2, 1.0, 1.0).unwrap();
        let got = classify_regime(&params(1, n, alpha, beta), &spec).comparison;
        if got != expected {
            mismatches.push(format!("comparison (n={n}, alpha={alpha}, beta={beta}) gave {got:?}"));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        mismatches.is_empty() && elapsed < Duration::from_secs(1),
        format!("16 theorem + 6 comparison tuples, {} mismatches {:?}, {elapsed:?}", mismatches.len(), mismatches),
    )
}

/// Dormand–Prince 5(4) with local error control, for an autonomous scalar ODE.
fn adaptive_ode(rhs: impl Fn(f64) -> f64, y0: f64, t_end: f64, rtol: f64) -> f64 {
    const A: [&[f64]; 6] = [
        &[1.0 / 5.0],
        &[3.0 / 40.0, 9.0 / 40.0],
        &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
        &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
        &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
        &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let (mut t, mut y, mut h): (f64, f64, f64) = (0.0, y0, 1e-4);
    while t < t_end {
        h = h.min(t_end - t);
        let mut k = [0.0; 7];
        k[0] = rhs(y);
        for stage in 0..6 {
            let incr: f64 = A[stage].iter().zip(&k).map(|(a, ki)| a * ki).sum();
            k[stage + 1] = rhs(y + h * incr);
        }
        let y_new = y + h * A[5].iter().zip(&k).map(|(a, ki)| a * ki).sum::<f64>();
        let err = h * E.iter().zip(&k).map(|(e, ki)| e * ki).sum::<f64>();
        let scale = rtol * y.abs().max(y_new.abs()) + 1e-300;
        let ratio = err.abs() / scale;
        if ratio <= 1.0 {
            t += h;
            y = y_new;
        }
        h *= (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0);
    }
    y
}

fn uniform_state_oracle() -> Verdict {
    let start = Instant::now();
    let grid = Grid::new_1d(1.0, 64).unwrap();
    let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
    let config = SolverConfig {
        dt: 1e-3,
        t_end: 5.0,
        ..Default::default()
    };
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for tau in [0u8, 1] {
        for (a, b) in [(2.0, 1.0), (1.0, 2.0), (1.0, 1.0)] {
            let p = ModelParams { a, b, ..params(tau, 1, 2.0, 1.5) };
            let u0 = Field::constant(grid, 1.0);
            let v0 = Field::constant(grid, spec.f_unchecked(1.0));
            let w0 = Field::constant(grid, spec.g_unchecked(1.0));
            let out = run(&p, &spec, &u0, Some(&v0), Some(&w0), &config).unwrap();
            let measure = grid.measure();
            let oracle = adaptive_ode(
                |u| p.a * u.powf(p.alpha) - p.b * measure * u.powf(p.alpha + p.beta),
                1.0,
                5.0,
                1e-12,
            );
            worst = worst.max(((out.final_state.u.linf() - oracle) / oracle).abs());
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-4 && elapsed < Duration::from_secs(30),
        format!("{cases} runs, max relative deviation {worst:.3e}, {elapsed:?}"),
    )
}

fn manufactured_elliptic() -> Verdict {
    let start = Instant::now();
    let error_at = |count: usize| {
        let grid = Grid::new_1d(1.0, count).unwrap();
        let source = Field::from_fn(grid, |x, _| (1.0 + PI * PI) * (PI * x).cos());
        let psi = solve_elliptic_signal(&source, 1e-13, 10_000).unwrap();
        let exact = Field::from_fn(grid, |x, _| (PI * x).cos());
        psi.values()
            .iter()
            .zip(exact.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let (e64, e128) = (error_at(64), error_at(128));
    let order = (e64 / e128).ln() / (127.0f64 / 63.0).ln();
    let elapsed = start.elapsed();
    verdict(
        order >= 1.9 && e128 < 1e-3 && elapsed < Duration::from_secs(10),
        format!("order {order:.4}, max error at 128 nodes {e128:.3e}, {elapsed:?}"),
    )
}

fn exact_cancellation() -> Verdict {
    let grid = Grid::new_1d(1.0, 64).unwrap();
    let spec = ProductionSpec::power(1.5, 1.5, 1.0, 1.0).unwrap();
    let u0 = Field::from_fn(grid, |x, _| 0.2 + 3.0 * (-(x - 0.4f64).powi(2) / 0.01).exp());
    let signal = Field::from_fn(grid, |x, _| 1.0 + 0.5 * (3.0 * x).cos());
    let config = SolverConfig {
        dt: 1e-3,
        t_end: 1.0,
        ..Default::default()
    };
    let trajectory = |sensitivity: f64, tau: u8| {
        let p = ModelParams {
            chi: sensitivity,
            xi: sensitivity,
            ..params(tau, 1, 2.0, 1.5)
        };
        let mut states = Vec::new();
        run_observed(&p, &spec, &u0, Some(&signal), Some(&signal), &config, |s, _| {
            states.push(s.u.values().to_vec())
        })
        .unwrap();
        states
    };
    let mut details = Vec::new();
    let mut pass = true;
    for tau in [0u8, 1] {
        let coupled = trajectory(1.0, tau);
        let free = trajectory(0.0, tau);
        let steps = coupled.len() - 1;
        let identical = coupled == free;
        pass &= identical && steps >= 1000;
        details.push(format!("tau={tau}: {steps} steps, bitwise identical {identical}"));
    }
    verdict(pass, details.join("; "))
}

fn bounded_demonstrations() -> Verdict {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, limit) in [("pe_case_a", 60), ("pp_case_b", 120)] {
        let start = Instant::now();
        let config = load_config(&configs_dir().join(format!("{name}.toml"))).unwrap();
        let sim = simulate(&config, |_, _| {}).unwrap();
        let out = &sim.outcome;
        let elapsed = start.elapsed();
        let half = config.solver.t_end / 2.0;
        let ok = out.status == RunStatus::CompletedBounded
            && sim.monitor.decay_respected()
            && out.sup_linf_u.is_finite()
            && out.t_sup_linf_u < half
            && elapsed < Duration::from_secs(limit);
        pass &= ok;
        details.push(format!(
            "{name} [{}]: {}, sup |u| {:.4} at t={}, mass violations {}, {elapsed:.2?}",
            sim.verdict.label(),
            out.status.as_str(),
            out.sup_linf_u,
            out.t_sup_linf_u,
            sim.monitor.violations.len()
        ));
    }
    verdict(pass, details.join("; "))
}

fn conservation_identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let grids = [
        Grid::new_1d(1.0, 65).unwrap(),
        Grid::new_1d(3.0, 200).unwrap(),
        Grid::new_2d([1.0, 2.0], [33, 41]).unwrap(),
        Grid::new_2d([2.0, 1.0], [64, 16]).unwrap(),
    ];
    let (mut div_worst, mut adj_worst): (f64, f64) = (0.0, 0.0);
    for i in 0..20 {
        let grid = grids[i % grids.len()];
        let phi = smooth_random_field(grid, &mut rng);
        let psi = smooth_random_field(grid, &mut rng);
        let lap_phi = laplacian_neumann(&phi);
        div_worst = div_worst.max(integrate(&lap_phi).abs());
        let w = grid.weights();
        let lhs = weighted_dot(&w, lap_phi.values(), psi.values());
        let rhs = weighted_dot(&w, phi.values(), laplacian_neumann(&psi).values());
        adj_worst = adj_worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0));
    }

    let grid = Grid::new_2d([1.0, 2.0], [32, 48]).unwrap();
    let p = ModelParams {
        chi: 0.0,
        xi: 0.0,
        a: 0.0,
        b: 0.0,
        ..params(0, 2, 2.0, 1.5)
    };
    let spec = ProductionSpec::power(0.5, 1.2, 1.0, 1.0).unwrap();
    let u0 = Field::from_fn(grid, |x, y| 0.5 + (-((x - 0.3).powi(2) + (y - 1.2).powi(2)) * 20.0).exp());
    let config = SolverConfig {
        dt: 1e-3,
        t_end: 0.5,
        ..Default::default()
    };
    let out = run(&p, &spec, &u0, None, None, &config).unwrap();
    let m0 = out.diagnostics[0].mass;
    let mass_worst = out
        .diagnostics
        .iter()
        .map(|r| ((r.mass - m0) / m0).abs())
        .fold(0.0, f64::max);
    verdict(
        div_worst <= 1e-12 && adj_worst <= 1e-10 && mass_worst <= 1e-12,
        format!(
            "|integral of laplacian| {div_worst:.2e}, adjointness gap {adj_worst:.2e}, diffusion mass drift {mass_worst:.2e}"
        ),
    )
}

fn theta_sweep() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 2..=64 {
        let k = f64::from(k);
        for rho in [1.1, 2.0, 4.0] {
            for n in 1..=3u32 {
                if k <= gn_k_floor(rho, n) {
                    continue;
                }
                checked += 1;
                let e = gn_theta_lrho(k, rho, n);
                let theta_k = gn_theta_lk(k, n);
                let ok = e.theta > 0.0
                    && e.theta < 1.0
                    && e.gradient_exponent < 1.0
                    && theta_k > 0.0
                    && theta_k < 1.0;
                if !ok {
                    failures.push((k, rho, n));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed < Duration::from_secs(1),
        format!("{checked} tuples above the floor, failures {failures:?}, {elapsed:?}"),
    )
}

fn chtx(args: &[&str], threads: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_chtx"))
        .args(args)
        .env("CHTX_THREADS", threads)
        .output()
        .expect("chtx runs")
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let configs = configs_dir();
    let mut compared = 0;
    let mut differing = Vec::new();
    for name in ["pe_case_a", "pp_case_b", "pe_2d_perturbed", "growth_blowup"] {
        let cfg = configs.join(format!("{name}.toml"));
        let outs: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("{name}_{i}"))).collect();
        for out in &outs {
            chtx(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], "1");
        }
        for file in ["diagnostics.csv", "summary.json"] {
            let a = std::fs::read(outs[0].join(file)).unwrap_or_default();
            let b = std::fs::read(outs[1].join(file)).unwrap_or_default();
            compared += 1;
            if a.is_empty() || a != b {
                differing.push(format!("{name}/{file}"));
            }
        }
    }
    let cfg = configs.join("sweep_alpha_beta.toml");
    let sweeps: Vec<Vec<u8>> = [("1", "s1"), ("4", "s4")]
        .iter()
        .map(|(threads, sub)| {
            let out = dir.path().join(sub);
            chtx(&["sweep", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], threads);
            std::fs::read(out.join("sweep.csv")).unwrap_or_default()
        })
        .collect();
    compared += 1;
    if sweeps[0].is_empty() || sweeps[0] != sweeps[1] {
        differing.push("sweep.csv (1 vs 4 threads)".into());
    }
    let audits: Vec<Vec<u8>> = (0..2)
        .map(|_| chtx(&["audit", configs.join("audit.toml").to_str().unwrap()], "1").stdout)
        .collect();
    compared += 1;
    if audits[0].is_empty() || audits[0] != audits[1] {
        differing.push("audit report".into());
    }
    verdict(
        differing.is_empty(),
        format!("{compared} output pairs compared, differing {differing:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("regime classifier truth table", regime_truth_table),
        ("uniform-state oracle equivalence", uniform_state_oracle),
        ("manufactured elliptic solution", manufactured_elliptic),
        ("exact discrete cancellation", exact_cancellation),
        ("bounded runs in PE(A) and PP(B)", bounded_demonstrations),
        ("conservation and operator identities", conservation_identities),
        ("interpolation exponent sweep", theta_sweep),
        ("determinism of CLI outputs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            v.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
