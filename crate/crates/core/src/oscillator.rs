//! Ladder and number operators on truncated polynomial bases.
//!
//! On `span{P_0, …, P_{M−1}}` the operators act as
//! `a⁺P_n = √2·b_n·P_{n+1}`, `a⁻P_n = √2·b_{n−1}·P_{n−1}` and `N·P_n = n·P_n`.
//! Matrix entries are floats because `√2·b_n` is usually irrational. The
//! diagonal functions `B(N)` and `B(N+I)` only involve `b_n²` and are kept
//! exact as [`EpSeq`]s.

use serde::{Deserialize, Serialize};

use crate::error::SpecError;
use crate::recurrence::RecurrenceSpec;
use crate::seqcore::rational::to_f64;
use crate::seqcore::EpSeq;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Dense `dim × dim` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    pub dim: usize,
    pub entries: Vec<f64>,
    pub label: String,
}

impl TruncatedOperator {
    pub fn zeros(dim: usize, label: impl Into<String>) -> Self {
        TruncatedOperator { dim, entries: vec![0.0; dim * dim], label: label.into() }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn matmul(&self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim, rhs.dim);
        let m = self.dim;
        let mut out = TruncatedOperator::zeros(m, format!("{}·{}", self.label, rhs.label));
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..m {
                    out.entries[i * m + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim, rhs.dim);
        TruncatedOperator {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
            label: format!("{} - {}", self.label, rhs.label),
        }
    }

    /// Largest `|self − other|` over rows and columns `< limit`.
    pub fn max_residual(&self, other: &TruncatedOperator, limit: usize) -> f64 {
        let limit = limit.min(self.dim);
        let mut worst = 0.0_f64;
        for i in 0..limit {
            for j in 0..limit {
                worst = worst.max((self.get(i, j) - other.get(i, j)).abs());
            }
        }
        worst
    }
}

/// Diagonal matrix with entries `f(0), …, f(M−1)`.
pub fn diagonal(seq: &EpSeq, dim: usize, label: impl Into<String>) -> TruncatedOperator {
    let mut out = TruncatedOperator::zeros(dim, label);
    for n in 0..dim {
        out.set(n, n, to_f64(&seq.at(n)));
    }
    out
}

/// `[D, X]` for diagonal `D`, computed entrywise as `(d_i − d_j)·X_ij`.
fn diagonal_commutator(d: &TruncatedOperator, x: &TruncatedOperator) -> TruncatedOperator {
    let m = x.dim;
    let mut out = TruncatedOperator::zeros(m, format!("[{}, {}]", d.label, x.label));
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, (d.get(i, i) - d.get(j, j)) * x.get(i, j));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ladder {
    pub a_plus: TruncatedOperator,
    pub a_minus: TruncatedOperator,
    pub n_op: TruncatedOperator,
}

pub fn build_ladder(s: &RecurrenceSpec, dim: usize) -> Result<Ladder, SpecError> {
    s.ensure_valid()?;
    let mut a_plus = TruncatedOperator::zeros(dim, "a+");
    let mut a_minus = TruncatedOperator::zeros(dim, "a-");
    let mut n_op = TruncatedOperator::zeros(dim, "N");
    for n in 0..dim {
        n_op.set(n, n, n as f64);
        if n + 1 < dim {
            let w = std::f64::consts::SQRT_2 * s.b_float(n);
            a_plus.set(n + 1, n, w);
            a_minus.set(n, n + 1, w);
        }
    }
    Ok(Ladder { a_plus, a_minus, n_op })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagonalRole {
    #[serde(rename = "B(N)")]
    BN,
    #[serde(rename = "B(N+I)")]
    BNI,
    #[serde(rename = "commutator")]
    Commutator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalSeq {
    pub role: DiagonalRole,
    pub seq: EpSeq,
}

/// `b2(n−1)` with the `b_{−1} = 0` boundary: zero at `n = 0`.
pub fn shifted_down_with_boundary(b2: &EpSeq) -> EpSeq {
    &b2.shift(-1) * &EpSeq::indicator_from(1)
}

/// Eigenvalue sequences of `B(N)` and `B(N+I)`.
pub fn b_diagonals(s: &RecurrenceSpec) -> Result<(DiagonalSeq, DiagonalSeq), SpecError> {
    s.ensure_valid()?;
    Ok((
        DiagonalSeq { role: DiagonalRole::BN, seq: shifted_down_with_boundary(&s.b2) },
        DiagonalSeq { role: DiagonalRole::BNI, seq: s.b2.clone() },
    ))
}

/// Eigenvalues of `[a⁻, a⁺] = 2(B(N+I) − B(N))`, including the `n = 0`
/// boundary.
pub fn commutator_diag(s: &RecurrenceSpec) -> Result<DiagonalSeq, SpecError> {
    let (bn, bni) = b_diagonals(s)?;
    let diff = &bni.seq - &bn.seq;
    Ok(DiagonalSeq { role: DiagonalRole::Commutator, seq: diff.scale(&crate::seqcore::rational::int(2)) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub max_residual: f64,
    pub checked_indices: usize,
    pub pass: bool,
}

/// Tolerance actually applied for a truncation of size `dim`. Up to
/// `dim = 64` the caller's value is used as is; beyond that it grows with
/// `dim · max b_n²` to absorb rounding in larger entries.
pub fn effective_tol(tol: f64, dim: usize, max_b2: f64) -> f64 {
    if dim <= 64 {
        tol
    } else {
        tol * (dim as f64 / 64.0) * max_b2.max(1.0)
    }
}

/// Checks `a⁻a⁺ = 2B(N+I)`, `a⁺a⁻ = 2B(N)` and `[N, a±] = ±a±` on the
/// truncation of size `dim`. Index `dim−1` is excluded: there the truncated
/// product differs from the truncation of the product.
pub fn verify_relations(s: &RecurrenceSpec, dim: usize, tol: f64) -> Result<Vec<RelationReport>, SpecError> {
    if dim < 3 {
        return Err(SpecError::Field { field: "M".into(), msg: format!("must be at least 3, got {dim}") });
    }
    let ladder = build_ladder(s, dim)?;
    check_relations(s, &ladder, tol)
}

/// Relation checks against caller-supplied matrices.
pub fn check_relations(s: &RecurrenceSpec, ladder: &Ladder, tol: f64) -> Result<Vec<RelationReport>, SpecError> {
    let dim = ladder.a_plus.dim;
    let interior = dim - 1;
    let (bn, bni) = b_diagonals(s)?;
    let two = crate::seqcore::rational::int(2);
    let two_bni = diagonal(&bni.seq.scale(&two), dim, "2B(N+I)");
    let two_bn = diagonal(&bn.seq.scale(&two), dim, "2B(N)");
    let max_b2 = (0..dim).map(|n| to_f64(&s.b2.at(n)).abs()).fold(0.0, f64::max);
    let tol = effective_tol(tol, dim, max_b2);

    let am_ap = ladder.a_minus.matmul(&ladder.a_plus);
    let ap_am = ladder.a_plus.matmul(&ladder.a_minus);
    let n_ap = diagonal_commutator(&ladder.n_op, &ladder.a_plus);
    let n_am = diagonal_commutator(&ladder.n_op, &ladder.a_minus);
    let mut neg_am = ladder.a_minus.clone();
    neg_am.entries.iter_mut().for_each(|x| *x = -*x);

    let report = |relation: &str, lhs: &TruncatedOperator, rhs: &TruncatedOperator| {
        let r = lhs.max_residual(rhs, interior);
        RelationReport { relation: relation.to_string(), max_residual: r, checked_indices: interior, pass: r <= tol }
    };
    Ok(vec![
        report("a-a+ = 2B(N+I)", &am_ap, &two_bni),
        report("a+a- = 2B(N)", &ap_am, &two_bn),
        report("[N,a+] = a+", &n_ap, &ladder.a_plus),
        report("[N,a-] = -a-", &n_am, &neg_am),
    ])
}
