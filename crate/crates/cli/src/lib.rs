//! Command-line front end for the chemotaxis toolkit: configuration files,
//! regime checks, simulation runs, parameter sweeps and interpolation audits.

pub mod commands;
pub mod config;
pub mod initial;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{load_config, parse_axis, SweepAxis};

#[derive(Debug, Parser)]
#[command(name = "chtx", version, about = "Attraction-repulsion chemotaxis with nonlocal damping")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the boundedness conditions for the configured parameters.
    CheckRegime { config: PathBuf },
    /// Simulate and write diagnostics, summary and snapshots.
    Run {
        config: PathBuf,
        /// Output directory, overriding [output].dir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a grid of parameter cells.
    Sweep {
        config: PathBuf,
        /// Sweep axis as name=v1,v2,...; at most two.
        #[arg(long = "axis", value_parser = parse_axis_arg)]
        axes: Vec<SweepAxis>,
        /// Only classify each cell, run no simulations.
        #[arg(long)]
        classify_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print interpolation exponent tables and implied constants.
    Audit { config: PathBuf },
}

fn parse_axis_arg(text: &str) -> Result<SweepAxis, String> {
    parse_axis(text).map_err(|e| e.to_string())
}

/// Executes a parsed command line, printing to stdout, and returns the exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::CheckRegime { config } => {
            let (text, code) = commands::cmd_check_regime(&load_config(&config)?);
            print!("{text}");
            Ok(code)
        }
        Command::Run { config, out } => {
            let report = commands::cmd_run(&load_config(&config)?, out.as_deref())?;
            print!("{}", report.text);
            Ok(report.exit_code)
        }
        Command::Sweep {
            config,
            axes,
            classify_only,
            out,
        } => {
            let report = commands::cmd_sweep(&load_config(&config)?, axes, classify_only, out.as_deref())?;
            println!("{} cells written to {}", report.rows.len(), report.csv_path.display());
            Ok(0)
        }
        Command::Audit { config } => {
            print!("{}", commands::cmd_audit(&load_config(&config)?)?);
            Ok(0)
        }
    }
}
