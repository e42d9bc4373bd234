//! Structural checks on a presentation and its effective cone.

use std::fmt;

use serde::Serialize;

use super::cone::EffectiveCone;
use super::linalg::{dot, gcd_i64};
use super::presentation::GitPresentation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &str, status: CheckStatus, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.status)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Index of the anticanonical class: the gcd of its pairings with the cone generators,
/// or `None` when some pairing is not positive (not Fano).
pub fn fano_index(anticanonical: &[i64], generators: &[Vec<i64>]) -> Option<i64> {
    let pairings: Vec<i64> = generators.iter().map(|g| dot(g, anticanonical)).collect();
    if pairings.is_empty() || pairings.iter().any(|&x| x <= 0) {
        return None;
    }
    Some(pairings.into_iter().fold(0, gcd_i64))
}

/// Reports root closure, Weyl compatibility, twist convexity, the Fano index and the
/// inequality `β(det ρ) − β(det σ) ≥ 0` on the cone generators.
pub fn validate(
    p: &GitPresentation,
    cone: &EffectiveCone,
    anticanonical: Option<&[i64]>,
) -> Result<ValidationReport> {
    if cone.rank() != p.rank() {
        return Err(Error::MalformedPresentation(format!(
            "cone has rank {}, presentation has rank {}",
            cone.rank(),
            p.rank()
        )));
    }
    if let Some(a) = anticanonical {
        if a.len() != p.rank() {
            return Err(Error::MalformedPresentation(
                "anticanonical character has the wrong length".into(),
            ));
        }
    }
    let mut report = ValidationReport::default();
    report.push(
        "root negation closure",
        CheckStatus::Pass,
        format!(
            "{} roots, closed under negation, summing to zero",
            p.roots().len()
        ),
    );
    report.push(
        "weyl compatibility",
        CheckStatus::Pass,
        format!(
            "{} generators permute weights, roots and twist weights",
            p.weyl().generators().len()
        ),
    );

    let generators = match cone.generators() {
        Ok(g) => {
            report.push("cone generators", CheckStatus::Pass, format!("{g:?}"));
            Some(g)
        }
        Err(e) => {
            report.push("cone generators", CheckStatus::Fail, e.to_string());
            None
        }
    };
    let Some(generators) = generators else {
        return Ok(report);
    };

    if p.twist().is_empty() {
        report.push("twist convexity", CheckStatus::Skipped, "no twist");
    } else {
        let bad: Vec<String> = generators
            .iter()
            .flat_map(|g| {
                p.twist()
                    .iter()
                    .filter(|e| dot(g, &e.t) < 0)
                    .map(move |e| format!("{g:?}·{:?} = {}", e.t, dot(g, &e.t)))
            })
            .collect();
        if bad.is_empty() {
            report.push(
                "twist convexity",
                CheckStatus::Pass,
                "every twist weight pairs nonnegatively",
            );
        } else {
            report.push("twist convexity", CheckStatus::Fail, bad.join("; "));
        }
    }

    match anticanonical {
        None => report.push(
            "fano index",
            CheckStatus::Skipped,
            "no anticanonical character supplied",
        ),
        Some(a) => match fano_index(a, &generators) {
            Some(i) => report.push(
                "fano index",
                if i >= 2 {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                format!("Fano of index {i}"),
            ),
            None => report.push(
                "fano index",
                CheckStatus::Fail,
                "anticanonical class is not positive on the cone",
            ),
        },
    }

    let diff: Vec<i64> = p
        .det_rho()
        .iter()
        .zip(p.det_sigma())
        .map(|(a, b)| a - b)
        .collect();
    let pairings: Vec<i64> = generators.iter().map(|g| dot(g, &diff)).collect();
    report.push(
        "det inequality",
        if pairings.iter().all(|&x| x >= 0) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        format!("β(det ρ) − β(det σ) on generators: {pairings:?}"),
    );
    Ok(report)
}
