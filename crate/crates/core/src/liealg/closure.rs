//! Lie closure of `{I, N, a⁺, a⁻}` under commutators.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::shiftop::{independent, reduce_against_basis, shiftop_commutator, ShiftOp};
use crate::error::ClosureError;
use crate::exec::Execution;
use crate::recurrence::RecurrenceSpec;

pub const DEFAULT_MAX_DIM: usize = 24;
pub const DEFAULT_MAX_DEPTH: usize = 8;
pub const DEFAULT_DEGREE_CAP: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    pub max_dim: usize,
    pub max_depth: usize,
    /// Largest coefficient tail degree tolerated in a basis element.
    pub degree_cap: i64,
    pub execution: Execution,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_dim: DEFAULT_MAX_DIM,
            max_depth: DEFAULT_MAX_DEPTH,
            degree_cap: DEFAULT_DEGREE_CAP,
            execution: Execution::default(),
        }
    }
}

impl ClosureOptions {
    pub fn with_budget(max_dim: usize, max_depth: usize) -> Self {
        ClosureOptions { max_dim, max_depth, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosureStatus {
    Closed,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    pub basis: Vec<ShiftOp>,
    pub dim: usize,
    pub depth_reached: usize,
    /// `(depth, dim)` after each pass; depth 0 is the generator set.
    pub growth_log: Vec<(usize, usize)>,
}

impl ClosureResult {
    pub fn is_closed_dim4(&self) -> bool {
        self.status == ClosureStatus::Closed && self.dim == 4
    }

    /// Dimension reached by the end of pass `depth`.
    pub fn dim_at_depth(&self, depth: usize) -> Option<usize> {
        self.growth_log.iter().rev().find(|(d, _)| *d <= depth).map(|(_, n)| *n)
    }
}

impl Serialize for ClosureResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("basis", &self.basis)?;
        map.serialize_entry("depth", &self.depth_reached)?;
        map.serialize_entry("dim", &self.dim)?;
        map.serialize_entry("growth_log", &self.growth_log)?;
        map.serialize_entry("status", &self.status)?;
        map.end()
    }
}

/// Commutates basis pairs pass by pass, reducing each result against the
/// current basis and appending independent residuals. Pass `d` evaluates
/// every pair that involves an element added in pass `d − 1` (pass 1: all
/// pairs of generators). Commutators within a pass are evaluated through
/// `opts.execution`; reduction runs serially in lexicographic pair order so
/// the basis is reproducible.
pub fn lie_closure(s: &RecurrenceSpec, opts: &ClosureOptions) -> Result<ClosureResult, ClosureError> {
    if opts.max_dim < 4 || opts.max_depth < 2 {
        return Err(ClosureError::BadBudget { max_dim: opts.max_dim, max_depth: opts.max_depth });
    }
    let mut basis = ShiftOp::generators();
    let mut growth_log = vec![(0, basis.len())];
    let mut seen = 0;

    for depth in 1..=opts.max_depth {
        let fresh_from = seen;
        seen = basis.len();
        let pairs: Vec<(usize, usize)> =
            (0..seen).flat_map(|i| ((i + 1).max(fresh_from)..seen).map(move |j| (i, j))).collect();
        let snapshot = &basis;
        let commutators = opts.execution.map(&pairs, |&(i, j)| shiftop_commutator(&snapshot[i], &snapshot[j], s));

        let mut added = 0;
        for c in commutators {
            let Some(residual) = reduce_against_basis(&c, &basis) else {
                continue;
            };
            let degree = residual.max_degree();
            if degree > opts.degree_cap {
                return Err(ClosureError::DegreeCap { degree, cap: opts.degree_cap, depth });
            }
            basis.push(residual);
            added += 1;
            if basis.len() > opts.max_dim {
                growth_log.push((depth, basis.len()));
                return Ok(ClosureResult {
                    status: ClosureStatus::BudgetExceeded,
                    dim: basis.len(),
                    basis,
                    depth_reached: depth,
                    growth_log,
                });
            }
        }
        growth_log.push((depth, basis.len()));
        if added == 0 {
            verify_closed(&basis, s, opts.execution)?;
            return Ok(ClosureResult {
                status: ClosureStatus::Closed,
                dim: basis.len(),
                basis,
                depth_reached: depth,
                growth_log,
            });
        }
    }
    Ok(ClosureResult {
        status: ClosureStatus::BudgetExceeded,
        dim: basis.len(),
        basis,
        depth_reached: opts.max_depth,
        growth_log,
    })
}

/// Every pairwise commutator lies in the span, and the basis is independent.
fn verify_closed(basis: &[ShiftOp], s: &RecurrenceSpec, exec: Execution) -> Result<(), ClosureError> {
    if !independent(basis) {
        return Err(ClosureError::NotClosed("basis is linearly dependent".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j))).collect();
    let leftovers =
        exec.map(&pairs, |&(i, j)| reduce_against_basis(&shiftop_commutator(&basis[i], &basis[j], s), basis).is_some());
    match pairs.iter().zip(leftovers).find(|(_, left)| *left) {
        Some(((i, j), _)) => Err(ClosureError::NotClosed(format!("[e{i}, e{j}] leaves the span"))),
        None => Ok(()),
    }
}
