//! Recurrence coefficients from a moment sequence.
//!
//! Runs the Chebyshev algorithm on exact moments: mixed moments
//! `σ_{k,l} = ⟨π_k, x^l⟩` of the monic orthogonal polynomials are built row by
//! row, and the monic recurrence `π_{k+1} = (x − α_k)π_k − β_k π_{k−1}` falls
//! out of their ratios. For the orthonormal system `a_k = α_k` and
//! `b_k² = β_{k+1} = σ_{k+1,k+1} / σ_{k,k}`.

use num_traits::{One, Signed, Zero};

use crate::error::MomentError;
use crate::seqcore::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    moments: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(moments: Vec<Rational>) -> Result<Self, MomentError> {
        match moments.first() {
            Some(m0) if m0.is_one() => Ok(MomentSequence { moments }),
            Some(m0) => Err(MomentError::NotNormalized(crate::seqcore::rational::format_rational(m0))),
            None => Err(MomentError::NotNormalized("nothing".into())),
        }
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    /// Highest moment index supplied.
    pub fn max_index(&self) -> usize {
        self.moments.len() - 1
    }
}

/// The first `count` diagonal coefficients and squared off-diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentRecurrence {
    pub a: Vec<Rational>,
    pub b2: Vec<Rational>,
}

pub fn moments_to_recurrence(m: &MomentSequence, count: usize) -> Result<MomentRecurrence, MomentError> {
    let needed = 2 * count;
    if m.max_index() < needed {
        return Err(MomentError::Insufficient { needed, available: m.max_index() });
    }
    if count == 0 {
        return Ok(MomentRecurrence { a: Vec::new(), b2: Vec::new() });
    }
    let mu = &m.moments[..=needed];

    // sigma rows are indexed by l directly; entries l < k stay unused.
    let mut prev: Vec<Rational> = vec![Rational::zero(); needed + 1];
    let mut cur: Vec<Rational> = mu.to_vec();
    let mut alpha = Vec::with_capacity(count);
    let mut beta = vec![Rational::one()];
    alpha.push(&mu[1] / &mu[0]);

    for k in 1..=count {
        let mut next = vec![Rational::zero(); needed + 1];
        for l in k..=needed - k {
            next[l] = &cur[l + 1] - &alpha[k - 1] * &cur[l] - &beta[k - 1] * &prev[l];
        }
        if !next[k].is_positive() {
            return Err(MomentError::NotPositiveDefinite { order: k });
        }
        beta.push(&next[k] / &cur[k - 1]);
        if k < count {
            alpha.push(&next[k + 1] / &next[k] - &cur[k] / &cur[k - 1]);
        }
        prev = cur;
        cur = next;
    }
    Ok(MomentRecurrence { a: alpha, b2: beta[1..].to_vec() })
}
