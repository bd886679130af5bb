use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chemotaxis_core::diagnostics::{mass_bound_monitor, DiagnosticsRecord, MassBoundReport};
use chemotaxis_core::grid::snapshot::write_snapshot;
use chemotaxis_core::model::RegimeVerdict;
use chemotaxis_core::solver::{run_observed, RunOutcome, RunStatus, SimulationState};
use serde::Serialize;

use super::check::regime_verdict;
use crate::config::RunConfig;

/// Process exit code for each run status.
pub fn exit_code(status: RunStatus) -> i32 {
    match status {
        RunStatus::CompletedBounded => 0,
        RunStatus::BlowupDetected => 3,
        RunStatus::StepCollapse => 4,
    }
}

pub struct Simulation {
    pub outcome: RunOutcome,
    pub verdict: RegimeVerdict,
    pub monitor: MassBoundReport,
}

/// Runs the configured problem in memory. `observer` sees every accepted state.
pub fn simulate(
    config: &RunConfig,
    mut observer: impl FnMut(&SimulationState, &DiagnosticsRecord),
) -> Result<Simulation> {
    config.validate()?;
    let grid = config.grid()?;
    let params = config.model_params();
    if params.n as usize != grid.dim() {
        bail!(
            "[params] n = {} does not match the {}-dimensional domain",
            params.n,
            grid.dim()
        );
    }
    let spec = config.production.spec()?;
    let (u0, v0, w0) = config.initial_fields()?;
    let outcome = run_observed(
        &params,
        &spec,
        &u0,
        v0.as_ref(),
        w0.as_ref(),
        &config.solver,
        &mut observer,
    )?;
    let monitor = mass_bound_monitor(&outcome.diagnostics, &params);
    Ok(Simulation {
        outcome,
        verdict: regime_verdict(config),
        monitor,
    })
}

#[derive(Serialize)]
struct Summary<'a> {
    status: &'static str,
    t_final: f64,
    mass_max: f64,
    sup_linf_u: f64,
    t_sup_linf_u: f64,
    accepted_steps: usize,
    rejected_steps: usize,
    mass_monitor: &'a MassBoundReport,
    regime_verdict: &'a RegimeVerdict,
    config_echo: &'a RunConfig,
}

pub struct RunReport {
    pub status: RunStatus,
    pub exit_code: i32,
    pub diagnostics_csv: PathBuf,
    pub summary_json: PathBuf,
    pub snapshots: Vec<PathBuf>,
    pub text: String,
}

fn csv_header(ks: &[f64]) -> Vec<String> {
    let mut header: Vec<String> = ["t", "dt_used", "mass", "linf_u", "linf_v", "linf_w", "nonlocal_beta"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for k in ks {
        header.push(format!("lk_norm_{k}"));
        header.push(format!("phi_{k}"));
        header.push(format!("grad_term_{k}"));
    }
    header.push("blowup_flag".into());
    header
}

fn csv_row(rec: &DiagnosticsRecord) -> Vec<String> {
    let mut row: Vec<String> = [rec.t, rec.dt_used, rec.mass, rec.linf_u, rec.linf_v, rec.linf_w, rec.nonlocal]
        .iter()
        .map(|x| x.to_string())
        .collect();
    for k in &rec.per_k {
        row.push(k.lk_norm.to_string());
        row.push(k.phi.to_string());
        row.push(k.grad_term.to_string());
    }
    row.push(u8::from(rec.blowup_flag).to_string());
    row
}

pub fn write_diagnostics_csv(path: &Path, ks: &[f64], records: &[DiagnosticsRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    writer.write_record(csv_header(ks))?;
    for rec in records {
        writer.write_record(csv_row(rec))?;
    }
    writer.flush()?;
    Ok(())
}

fn snapshot_paths(dir: &Path, step: usize) -> [(PathBuf, usize); 3] {
    let name = |c: &str| dir.join(format!("snapshot_{c}_{step:08}.chtx"));
    [(name("u"), 0), (name("v"), 1), (name("w"), 2)]
}

fn write_state_snapshots(dir: &Path, state: &SimulationState) -> Result<Vec<PathBuf>> {
    let mut written = Vec::with_capacity(3);
    for (path, which) in snapshot_paths(dir, state.step_count) {
        let field = [&state.u, &state.v, &state.w][which];
        let mut out = BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?);
        write_snapshot(&mut out, field)?;
        out.flush()?;
        written.push(path);
    }
    Ok(written)
}

/// Runs the configuration and writes the diagnostics CSV, the summary JSON and
/// any snapshots into `out_dir` (the configured directory when `None`).
pub fn cmd_run(config: &RunConfig, out_dir: Option<&Path>) -> Result<RunReport> {
    let dir = out_dir.unwrap_or(&config.output.dir).to_path_buf();
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    let every = config.output.snapshot_every;
    let mut snapshots = Vec::new();
    let mut snapshot_error = None;
    let sim = simulate(config, |state, _| {
        if every == 0 || state.step_count % every != 0 || snapshot_error.is_some() {
            return;
        }
        match write_state_snapshots(&dir, state) {
            Ok(paths) => snapshots.extend(paths),
            Err(e) => snapshot_error = Some(e),
        }
    })?;
    if let Some(e) = snapshot_error {
        return Err(e.context("writing snapshots"));
    }

    let diagnostics_csv = dir.join(&config.output.diagnostics_csv);
    let ks = config.solver.k_set(config.dimension());
    write_diagnostics_csv(&diagnostics_csv, &ks, &sim.outcome.diagnostics)?;

    let outcome = &sim.outcome;
    let summary = Summary {
        status: outcome.status.as_str(),
        t_final: outcome.t_final,
        mass_max: outcome.mass_max,
        sup_linf_u: outcome.sup_linf_u,
        t_sup_linf_u: outcome.t_sup_linf_u,
        accepted_steps: outcome.final_state.step_count,
        rejected_steps: outcome.rejected_steps,
        mass_monitor: &sim.monitor,
        regime_verdict: &sim.verdict,
        config_echo: config,
    };
    let summary_json = dir.join(&config.output.summary_json);
    let mut json = serde_json::to_string_pretty(&summary)?;
    json.push('\n');
    fs::write(&summary_json, json).with_context(|| format!("writing {}", summary_json.display()))?;

    let text = format!(
        "status: {}\nt_final: {}\nsup_linf_u: {} (at t = {})\nmass_max: {}\nregime: {}\nmass decay respected: {}\nwrote {} and {}\n",
        outcome.status.as_str(),
        outcome.t_final,
        outcome.sup_linf_u,
        outcome.t_sup_linf_u,
        outcome.mass_max,
        sim.verdict.label(),
        sim.monitor.decay_respected(),
        diagnostics_csv.display(),
        summary_json.display(),
    );
    Ok(RunReport {
        status: outcome.status,
        exit_code: exit_code(outcome.status),
        diagnostics_csv,
        summary_json,
        snapshots,
        text,
    })
}
