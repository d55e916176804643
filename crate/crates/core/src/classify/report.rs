//! One document combining validation, the difference table, both verdict
//! routes, and the symmetrization check.

use serde::Serialize;

use super::{classify, difference_table, DifferenceTable, Verdict, DEFAULT_J_MAX};
use crate::error::{ClassifyError, ClosureError};
use crate::liealg::{lie_closure, ClosureOptions, ClosureResult, ClosureStatus};
use crate::recurrence::{symmetrize, RecurrenceSpec};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureSummary {
    pub status: ClosureStatus,
    /// Dimension of the Lie span of `{I, N, a⁺, a⁻}` reached.
    pub lie_dim: usize,
    pub depth: usize,
    pub growth_log: Vec<(usize, usize)>,
    pub interpretation: String,
}

impl ClosureSummary {
    fn new(r: &ClosureResult, verdict: &Verdict) -> Self {
        let interpretation = match r.status {
            ClosureStatus::Closed => format!("closed: Lie dimension {}", r.dim),
            ClosureStatus::BudgetExceeded if verdict.is_infinite() => {
                format!("infinite-dimensional (witnessed: dim > {})", r.dim - 1)
            }
            ClosureStatus::BudgetExceeded => format!("growth witness: dim {} at depth {}", r.dim, r.depth_reached),
        };
        ClosureSummary {
            status: r.status,
            lie_dim: r.dim,
            depth: r.depth_reached,
            growth_log: r.growth_log.clone(),
            interpretation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub label: String,
    pub valid: bool,
    pub validation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_table: Option<DifferenceTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetrized_verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetrization_invariant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureSummary>,
    /// Closed at 4 with a finite verdict, or growing with an infinite one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// Whether a closure outcome matches a verdict.
pub fn closure_agrees(verdict: &Verdict, closure: &ClosureResult) -> bool {
    if verdict.is_finite() {
        closure.is_closed_dim4()
    } else {
        closure.status == ClosureStatus::BudgetExceeded
    }
}

pub fn classification_report(s: &RecurrenceSpec, opts: &ClosureOptions) -> Result<ClassificationReport, ReportError> {
    let validation = s.validate();
    let mut report = ClassificationReport {
        label: s.label.clone(),
        valid: validation.is_valid(),
        validation: validation.message(),
        difference_table: None,
        verdict: None,
        symmetrized_verdict: None,
        symmetrization_invariant: None,
        closure: None,
        routes_agree: None,
    };
    if !report.valid {
        return Ok(report);
    }
    let table = difference_table(s, DEFAULT_J_MAX).map_err(ClassifyError::from)?;
    let verdict = classify(s)?;
    let sym_verdict = classify(&symmetrize(s))?;
    let closure = lie_closure(s, opts)?;
    report.difference_table = Some(table);
    report.symmetrization_invariant = Some(sym_verdict == verdict);
    report.routes_agree = Some(closure_agrees(&verdict, &closure));
    report.closure = Some(ClosureSummary::new(&closure, &verdict));
    report.verdict = Some(verdict);
    report.symmetrized_verdict = Some(sym_verdict);
    Ok(report)
}
