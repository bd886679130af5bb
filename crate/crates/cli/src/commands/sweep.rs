use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;

use super::check::regime_verdict;
use super::run::simulate;
use crate::config::{RunConfig, SweepAxis};

/// Environment variable capping the number of concurrently running cells.
pub const THREADS_ENV: &str = "CHTX_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub values: Vec<f64>,
    pub regime: String,
    pub comparison: String,
    /// `classified` in classifier-only mode, `error` when the cell failed,
    /// the run status otherwise.
    pub status: String,
    pub mass_max: Option<f64>,
    pub sup_linf_u: Option<f64>,
    pub t_final: Option<f64>,
    pub error: String,
}

pub struct SweepReport {
    pub axes: Vec<SweepAxis>,
    pub rows: Vec<SweepRow>,
    pub csv_path: PathBuf,
}

/// All cells in cartesian order, the last axis varying fastest.
pub fn cartesian(axes: &[SweepAxis]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |cells, axis| {
        cells
            .iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |&v| {
                    let mut cell = prefix.clone();
                    cell.push(v);
                    cell
                })
            })
            .collect()
    })
}

fn evaluate_cell(base: &RunConfig, axes: &[SweepAxis], values: &[f64], classify_only: bool) -> SweepRow {
    let mut row = SweepRow {
        values: values.to_vec(),
        regime: String::new(),
        comparison: String::new(),
        status: "error".into(),
        mass_max: None,
        sup_linf_u: None,
        t_final: None,
        error: String::new(),
    };
    let mut config = base.clone();
    for (axis, &value) in axes.iter().zip(values) {
        if let Err(e) = config.set_parameter(&axis.name, value) {
            row.error = e.to_string();
            return row;
        }
    }
    let verdict = regime_verdict(&config);
    row.regime = verdict.label();
    row.comparison = verdict.comparison.map_or("none".into(), |c| c.to_string());
    if let Err(e) = config.validate() {
        row.error = e.to_string();
        return row;
    }
    if classify_only {
        row.status = "classified".into();
        return row;
    }
    match simulate(&config, |_, _| {}) {
        Ok(sim) => {
            row.status = sim.outcome.status.as_str().into();
            row.mass_max = Some(sim.outcome.mass_max);
            row.sup_linf_u = Some(sim.outcome.sup_linf_u);
            row.t_final = Some(sim.outcome.t_final);
        }
        Err(e) => row.error = format!("{e:#}"),
    }
    row
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Evaluates every cell concurrently and returns the rows in cartesian order.
pub fn sweep_rows(config: &RunConfig, axes: &[SweepAxis], classify_only: bool) -> Result<Vec<SweepRow>> {
    let cells = cartesian(axes);
    let work = || {
        cells
            .par_iter()
            .map(|values| evaluate_cell(config, axes, values, classify_only))
            .collect::<Vec<_>>()
    };
    let rows = match thread_cap() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .context("building the sweep thread pool")?
            .install(work),
        None => work(),
    };
    Ok(rows)
}

pub fn write_sweep_csv(path: &Path, axes: &[SweepAxis], rows: &[SweepRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    let mut header: Vec<String> = axes.iter().map(|a| a.name.clone()).collect();
    header.extend(
        ["regime_verdict", "comparison", "status", "mass_max", "sup_linf_u", "t_final", "error"].map(String::from),
    );
    writer.write_record(&header)?;
    let opt = |x: Option<f64>| x.map_or(String::new(), |v| v.to_string());
    for row in rows {
        let mut record: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
        record.extend([
            row.regime.clone(),
            row.comparison.clone(),
            row.status.clone(),
            opt(row.mass_max),
            opt(row.sup_linf_u),
            opt(row.t_final),
            row.error.clone(),
        ]);
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Axes given on the command line replace those of the `[sweep]` section.
pub fn cmd_sweep(
    config: &RunConfig,
    cli_axes: Vec<SweepAxis>,
    classify_only: bool,
    out_dir: Option<&Path>,
) -> Result<SweepReport> {
    let section = config.sweep.clone().unwrap_or_default();
    let axes = if cli_axes.is_empty() { section.axes } else { cli_axes };
    if axes.len() > 2 {
        anyhow::bail!("a sweep takes at most two axes, got {}", axes.len());
    }
    let classify_only = classify_only || section.classify_only;
    let rows = sweep_rows(config, &axes, classify_only)?;

    let dir = out_dir.unwrap_or(&config.output.dir);
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv_path = dir.join(&config.output.sweep_csv);
    write_sweep_csv(&csv_path, &axes, &rows)?;
    Ok(SweepReport { axes, rows, csv_path })
}
