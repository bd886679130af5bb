//! Boundedness-regime classifier.
//!
//! Evaluates the sufficient conditions for global boundedness of the
//! parabolic-elliptic (`τ = 0`) and fully parabolic (`τ = 1`) systems, each
//! split into a case A and a case B, and, independently, the subquadratic /
//! superquadratic conditions known for the single-signal model without
//! repulsion. Every inequality is reported with both sides and its slack.
//! Comparisons are exact: a parameter set on a strict boundary is not
//! classified.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ModelParams, ProductionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "PE")]
    ParabolicElliptic,
    #[serde(rename = "PP")]
    FullyParabolic,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::ParabolicElliptic => "PE",
            Theorem::FullyParabolic => "PP",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "A",
            Case::B => "B",
        })
    }
}

/// Growth regimes of the attraction-only comparison model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComparisonRegime {
    Subquadratic,
    Superquadratic,
}

impl fmt::Display for ComparisonRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComparisonRegime::Subquadratic => "Subquadratic",
            ComparisonRegime::Superquadratic => "Superquadratic",
        })
    }
}

/// Which condition set a margin belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarginGroup {
    CaseA,
    CaseB,
    Subquadratic,
    Superquadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
            Relation::Less => "<",
            Relation::LessEq => "<=",
        }
    }

    fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Greater => lhs > rhs,
            Relation::GreaterEq => lhs >= rhs,
            Relation::Less => lhs < rhs,
            Relation::LessEq => lhs <= rhs,
        }
    }

    /// Positive when the inequality is satisfied with room to spare.
    fn slack(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Greater | Relation::GreaterEq => lhs - rhs,
            Relation::Less | Relation::LessEq => rhs - lhs,
        }
    }
}

/// One evaluated inequality `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub group: MarginGroup,
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

impl Margin {
    fn new(group: MarginGroup, name: &str, lhs: f64, relation: Relation, rhs: f64) -> Self {
        Self {
            group,
            name: name.to_string(),
            lhs,
            relation,
            rhs,
            slack: relation.slack(lhs, rhs),
            holds: relation.holds(lhs, rhs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub theorem: Option<Theorem>,
    pub case: Option<Case>,
    /// Both case A and case B hold; `case` is then A.
    pub both_cases: bool,
    pub comparison: Option<ComparisonRegime>,
    pub margins: Vec<Margin>,
}

impl RegimeVerdict {
    pub fn margins_in(&self, group: MarginGroup) -> impl Iterator<Item = &Margin> {
        self.margins.iter().filter(move |m| m.group == group)
    }

    fn group_holds(&self, group: MarginGroup) -> bool {
        self.margins_in(group).all(|m| m.holds)
    }

    /// Short label such as `"PE case A"` or `"None"`.
    pub fn label(&self) -> String {
        match (self.theorem, self.case) {
            (Some(t), Some(c)) => format!("{t} case {c}"),
            _ => "None".to_string(),
        }
    }
}

/// Evaluates every boundedness condition for the given parameters.
///
/// Only the theorem matching `params.tau` is considered. When both of its
/// cases hold, case A is reported and `both_cases` is set. The parameters are
/// not validated, so sweeps may map the region outside `α, β ≥ 1` too.
pub fn classify_regime(params: &ModelParams, spec: &ProductionSpec) -> RegimeVerdict {
    use MarginGroup::*;
    use Relation::*;

    let n = f64::from(params.n);
    let (alpha, beta) = (params.alpha, params.beta);
    let (ell, rho) = (spec.ell, spec.rho);
    let growth = alpha - 1.0;

    let mut margins = Vec::with_capacity(10);
    let theorem = if params.tau == 0 {
        margins.push(Margin::new(CaseA, "beta > n(alpha-1)/2", beta, Greater, 0.5 * n * growth));
        margins.push(Margin::new(CaseA, "ell <= min(alpha-1, rho)", ell, LessEq, growth.min(rho)));
        margins.push(Margin::new(
            CaseB,
            "beta > (n*ell + 2(ell-alpha+1))/2",
            beta,
            Greater,
            0.5 * (n * ell + 2.0 * (ell - alpha + 1.0)),
        ));
        margins.push(Margin::new(CaseB, "alpha-1 < min(ell, rho)", growth, Less, ell.min(rho)));
        Theorem::ParabolicElliptic
    } else {
        let top = rho.max(ell);
        margins.push(Margin::new(CaseA, "beta > n(alpha-1)/2", beta, Greater, 0.5 * n * growth));
        margins.push(Margin::new(CaseA, "alpha-1 >= max(rho, ell)", growth, GreaterEq, top));
        margins.push(Margin::new(
            CaseB,
            "beta > (n*max(rho,ell) + 2(max(rho,ell)-alpha+1))/2",
            beta,
            Greater,
            0.5 * (n * top + 2.0 * (top - alpha + 1.0)),
        ));
        margins.push(Margin::new(CaseB, "alpha-1 < min(rho, ell)", growth, Less, rho.min(ell)));
        Theorem::FullyParabolic
    };

    margins.push(Margin::new(Subquadratic, "alpha >= 1", alpha, GreaterEq, 1.0));
    margins.push(Margin::new(Subquadratic, "alpha < 2", alpha, Less, 2.0));
    margins.push(Margin::new(Subquadratic, "beta > n/2 + 2 - alpha", beta, Greater, 0.5 * n + 2.0 - alpha));
    margins.push(Margin::new(Superquadratic, "alpha >= 2", alpha, GreaterEq, 2.0));
    margins.push(Margin::new(Superquadratic, "alpha < 1 + 2beta/n", alpha, Less, 1.0 + 2.0 * beta / n));
    margins.push(Margin::new(Superquadratic, "beta > n/2", beta, Greater, 0.5 * n));

    let mut verdict = RegimeVerdict {
        theorem: None,
        case: None,
        both_cases: false,
        comparison: None,
        margins,
    };
    let case_a = verdict.group_holds(CaseA);
    let case_b = verdict.group_holds(CaseB);
    verdict.both_cases = case_a && case_b;
    verdict.case = if case_a {
        Some(Case::A)
    } else if case_b {
        Some(Case::B)
    } else {
        None
    };
    if verdict.case.is_some() {
        verdict.theorem = Some(theorem);
    }
    verdict.comparison = if verdict.group_holds(Subquadratic) {
        Some(ComparisonRegime::Subquadratic)
    } else if verdict.group_holds(Superquadratic) {
        Some(ComparisonRegime::Superquadratic)
    } else {
        None
    };
    verdict
}
