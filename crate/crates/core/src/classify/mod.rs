//! Dimension classification from the difference table of `b_n²`.
//!
//! With `b_{−1} = 0`, set `A^(0)(n) = b_n² − b_{n−1}²` and
//! `A^(j)(n) = A^(j−1)(n+1) − A^(j−1)(n)`. The oscillator algebra is
//! four-dimensional exactly when `A^(1)` is constant, which is the same as
//! `b_n² = (a₀ + a₂n)(1 + n)`, i.e. `b_n² = a₀ + a₁n + a₂n²` with
//! `a₁ = a₀ + a₂`. Any nonconstant `A^(1)` makes the algebra infinite.

pub mod report;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ClassifyError, SpecError};
use crate::oscillator::shifted_down_with_boundary;
use crate::recurrence::RecurrenceSpec;
use crate::seqcore::rational::{format_rational, int};
use crate::seqcore::{EpSeq, PolyN, Rational};

pub use report::{classification_report, ClassificationReport};

pub const DEFAULT_J_MAX: usize = 3;

/// Rows `A^(0) … A^(j_max)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceTable {
    pub rows: Vec<EpSeq>,
}

impl DifferenceTable {
    pub fn row(&self, j: usize) -> &EpSeq {
        &self.rows[j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    FiniteDim4,
    Infinite,
    ConsistentWithFinite,
    InfiniteWitnessed,
}

/// Two positions where row `j` of the difference table takes different
/// values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub j: usize,
    pub n1: usize,
    #[serde(with = "crate::seqcore::rational::serde_rational")]
    pub v1: Rational,
    pub n2: usize,
    #[serde(with = "crate::seqcore::rational::serde_rational")]
    pub v2: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(with = "crate::seqcore::rational::serde_rational_opt", skip_serializing_if = "Option::is_none", default)]
    pub a0: Option<Rational>,
    #[serde(with = "crate::seqcore::rational::serde_rational_opt", skip_serializing_if = "Option::is_none", default)]
    pub a2: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub note: String,
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        self.kind == VerdictKind::FiniteDim4
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, VerdictKind::Infinite | VerdictKind::InfiniteWitnessed)
    }
}

/// `A^(0)` from `b_n²` with the `b_{−1} = 0` boundary folded in.
pub fn first_row(b2: &EpSeq) -> EpSeq {
    b2 - &shifted_down_with_boundary(b2)
}

pub fn difference_table(s: &RecurrenceSpec, j_max: usize) -> Result<DifferenceTable, SpecError> {
    s.ensure_valid()?;
    let mut rows = vec![first_row(&s.b2)];
    for j in 0..j_max {
        let next = rows[j].difference();
        rows.push(next);
    }
    Ok(DifferenceTable { rows })
}

/// `(a₀, a₂)` when `b2 = c₀ + c₁n + c₂n²` with `c₁ = c₀ + c₂`.
pub fn check_factorization(b2: &PolyN) -> Option<(Rational, Rational)> {
    if b2.degree() > 2 {
        return None;
    }
    let (c0, c1, c2) = (b2.coeff(0), b2.coeff(1), b2.coeff(2));
    (c1 == &c0 + &c2).then_some((c0, c2))
}

/// First position where `row` differs from its value at 0. The search
/// bound suffices: a canonical sequence constant on `n0 + deg + 2` points
/// is constant.
fn nonconstancy(j: usize, row: &EpSeq) -> Option<Witness> {
    let v1 = row.at(0);
    let bound = row.n0() + row.tail().degree().max(0) as usize + 2;
    (1..=bound).find_map(|n| {
        let v2 = row.at(n);
        (v2 != v1).then(|| Witness { j, n1: 0, v1: v1.clone(), n2: n, v2 })
    })
}

pub fn classify(s: &RecurrenceSpec) -> Result<Verdict, ClassifyError> {
    let table = difference_table(s, 1)?;
    let by_table = table.row(1).constant_value().map(|c| (table.row(0).at(0), c / int(2)));
    let by_factor = if s.b2.prefix().is_empty() { check_factorization(s.b2.tail()) } else { None };
    if by_table != by_factor {
        return Err(ClassifyError::RouteMismatch(format!(
            "difference table says {by_table:?}, factorization says {by_factor:?} for {s}"
        )));
    }
    match by_table {
        Some((a0, a2)) => {
            if !a0.is_positive() || a2.is_negative() {
                return Err(SpecError::Field {
                    field: "b2".into(),
                    msg: format!(
                        "(a0 + a2 n)(1 + n) with a0={}, a2={} is not positive for all n",
                        format_rational(&a0),
                        format_rational(&a2)
                    ),
                }
                .into());
            }
            let note = format!("b2 = ({} + {}·n)(1 + n); Lie dimension 4", format_rational(&a0), format_rational(&a2));
            Ok(Verdict { kind: VerdictKind::FiniteDim4, a0: Some(a0), a2: Some(a2), witness: None, note })
        }
        None => {
            let witness = nonconstancy(1, table.row(1))
                .ok_or_else(|| ClassifyError::RouteMismatch("A^(1) nonconstant but no witness".into()))?;
            let note = format!(
                "A^(1) is not constant (A^(1)({}) = {}, A^(1)({}) = {}); infinite-dimensional",
                witness.n1,
                format_rational(&witness.v1),
                witness.n2,
                format_rational(&witness.v2)
            );
            Ok(Verdict { kind: VerdictKind::Infinite, a0: None, a2: None, witness: Some(witness), note })
        }
    }
}

/// Finite-window difference table of `b2_values`: row `j` has
/// `len − j` entries.
pub fn prefix_table(b2_values: &[Rational], j_max: usize) -> Vec<Vec<Rational>> {
    let mut row0 = Vec::with_capacity(b2_values.len());
    for (n, v) in b2_values.iter().enumerate() {
        row0.push(if n == 0 { v.clone() } else { v - &b2_values[n - 1] });
    }
    let mut rows = vec![row0];
    for j in 0..j_max.min(b2_values.len().saturating_sub(1)) {
        let next = rows[j].windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    rows
}

/// Classification from finitely many exact `b_n²` values. Nonconstancy of
/// `A^(1)` on the window is a proof of infinitude; agreement with
/// `(a₀ + a₂n)(1 + n)` is only consistency, never a proof of finiteness.
pub fn classify_prefix(b2_values: &[Rational], j_max: usize) -> Result<Verdict, ClassifyError> {
    if b2_values.len() < 4 {
        return Err(ClassifyError::TooFewValues(b2_values.len()));
    }
    if let Some((index, v)) = b2_values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(ClassifyError::NonPositiveValue { index, value: format_rational(v) });
    }
    let rows = prefix_table(b2_values, j_max.max(1));
    let row1 = &rows[1];
    if let Some(n2) = row1.iter().position(|v| *v != row1[0]) {
        let witness = Witness { j: 1, n1: 0, v1: row1[0].clone(), n2, v2: row1[n2].clone() };
        let note = format!(
            "A^(1) differs at n=0 and n={n2} within the {}-value window; no extension is finite-dimensional",
            b2_values.len()
        );
        return Ok(Verdict { kind: VerdictKind::InfiniteWitnessed, a0: None, a2: None, witness: Some(witness), note });
    }
    let a0 = b2_values[0].clone();
    let a2 = &row1[0] / int(2);
    if a2.is_negative() {
        return Ok(Verdict {
            kind: VerdictKind::InfiniteWitnessed,
            a0: None,
            a2: None,
            witness: None,
            note: format!(
                "window fits (a0 + a2 n)(1 + n) only with a2={} < 0, which cannot stay positive",
                format_rational(&a2)
            ),
        });
    }
    let note = format!(
        "first {} values match b2 = ({} + {}·n)(1 + n); finite data cannot prove finiteness",
        b2_values.len(),
        format_rational(&a0),
        format_rational(&a2)
    );
    debug_assert!(!a0.is_zero());
    Ok(Verdict { kind: VerdictKind::ConsistentWithFinite, a0: Some(a0), a2: Some(a2), witness: None, note })
}
