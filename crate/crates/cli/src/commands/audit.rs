use std::fmt::Write;

use anyhow::{Context, Result};
use chemotaxis_core::diagnostics::{audit_gn_sample, gn_k_floor, gn_theta_lk, gn_theta_lrho};
use chemotaxis_core::grid::Grid;

use crate::config::{AuditTuple, RunConfig};

/// Exponent tables for every configured tuple plus implied-constant
/// statistics over seeded random fields on the unit interval or square.
pub fn cmd_audit(config: &RunConfig) -> Result<String> {
    let audit = config
        .audit
        .as_ref()
        .context("the config has no [audit] section")?;
    let mut out = String::new();

    writeln!(out, "L^rho interpolation").unwrap();
    writeln!(out, "k\trho\tn\tk_floor\ttheta\tgradient_exponent\tadmissible").unwrap();
    for &AuditTuple(k, rho, n) in &audit.tuples {
        let e = gn_theta_lrho(k, rho, n);
        writeln!(
            out,
            "{k}\t{rho}\t{n}\t{}\t{}\t{}\t{}",
            gn_k_floor(rho, n),
            e.theta,
            e.gradient_exponent,
            e.admissible
        )
        .unwrap();
    }

    writeln!(out, "\nL^k interpolation").unwrap();
    writeln!(out, "k\tn\ttheta").unwrap();
    for &AuditTuple(k, _, n) in &audit.tuples {
        writeln!(out, "{k}\t{n}\t{}", gn_theta_lk(k, n)).unwrap();
    }

    writeln!(
        out,
        "\nimplied constants (samples = {}, counts = {}, seed = {})",
        audit.samples, audit.counts, audit.seed
    )
    .unwrap();
    writeln!(out, "k\trho\tn\tmin\tmax\tmean").unwrap();
    for &AuditTuple(k, rho, n) in &audit.tuples {
        if n > 2 {
            writeln!(out, "{k}\t{rho}\t{n}\tskipped: sampling grids are at most two-dimensional").unwrap();
            continue;
        }
        let dims = n as usize;
        let grid = Grid::new(&vec![1.0; dims], &vec![audit.counts; dims])?;
        let stats = audit_gn_sample(grid, k, rho, n, audit.samples, audit.seed)?;
        writeln!(
            out,
            "{k}\t{rho}\t{n}\t{}\t{}\t{}",
            stats.min_constant, stats.max_constant, stats.mean_constant
        )
        .unwrap();
    }
    Ok(out)
}
