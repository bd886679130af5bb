use std::fmt::Write;

use chemotaxis_core::model::{classify_regime, MarginGroup, RegimeVerdict};

use crate::config::RunConfig;

/// Exit code when no case of the applicable theorem holds.
pub const EXIT_NO_REGIME: i32 = 2;

pub fn regime_verdict(config: &RunConfig) -> RegimeVerdict {
    classify_regime(&config.model_params(), &config.production.spec_unchecked())
}

fn group_label(group: MarginGroup) -> &'static str {
    match group {
        MarginGroup::CaseA => "case A",
        MarginGroup::CaseB => "case B",
        MarginGroup::Subquadratic => "subquadratic",
        MarginGroup::Superquadratic => "superquadratic",
    }
}

/// Renders the verdict, every margin and the comparison line. Exit code 0
/// when a case holds, [`EXIT_NO_REGIME`] otherwise.
pub fn cmd_check_regime(config: &RunConfig) -> (String, i32) {
    let params = config.model_params();
    let verdict = regime_verdict(config);
    let mut out = String::new();
    let theorem = if params.tau == 0 { "PE" } else { "PP" };
    writeln!(out, "verdict: {}", verdict.label()).unwrap();
    writeln!(
        out,
        "theorem: {theorem} (tau = {}, n = {}, alpha = {}, beta = {}, ell = {}, rho = {})",
        params.tau,
        params.n,
        params.alpha,
        params.beta,
        config.production.ell(),
        config.production.rho()
    )
    .unwrap();
    match verdict.case {
        Some(case) if verdict.both_cases => writeln!(out, "case: {case} (both cases hold)").unwrap(),
        Some(case) => writeln!(out, "case: {case}").unwrap(),
        None => writeln!(out, "case: none").unwrap(),
    }
    for m in &verdict.margins {
        writeln!(
            out,
            "margin [{}] {}: {} {} {} slack {} {}",
            group_label(m.group),
            m.name,
            m.lhs,
            m.relation.symbol(),
            m.rhs,
            m.slack,
            if m.holds { "holds" } else { "VIOLATED" }
        )
        .unwrap();
    }
    match verdict.comparison {
        Some(regime) => writeln!(out, "comparison: {regime}").unwrap(),
        None => writeln!(out, "comparison: none").unwrap(),
    }
    let code = if verdict.case.is_some() { 0 } else { EXIT_NO_REGIME };
    (out, code)
}
