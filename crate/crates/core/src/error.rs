use thiserror::Error;

use crate::seqcore::rational::format_rational;
use crate::seqcore::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Failures of the coefficient expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("exponent at position {pos} must be a natural literal")]
    BadExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("moment sequence must start with mu_0 = 1, got {0}")]
    NotNormalized(String),
    #[error("need moments up to index {needed}, only {available} supplied")]
    Insufficient { needed: usize, available: usize },
    #[error("Hankel matrix is not positive definite at order {order}")]
    NotPositiveDefinite { order: usize },
}

/// Errors raised while building or consuming a recurrence specification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("laguerre parameter alpha must exceed -1, got {0}")]
    AlphaOutOfRange(String),
    #[error("b2 not positive at n={index} (value {value})")]
    NotPositive { index: usize, value: String },
    #[error("field `{field}`: {msg}")]
    Field { field: String, msg: String },
    #[error("field `{field}`: {source}")]
    Expr {
        field: String,
        #[source]
        source: ExprError,
    },
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error("malformed spec file: {0}")]
    Json(String),
}

impl SpecError {
    pub(crate) fn not_positive(index: usize, value: &Rational) -> Self {
        SpecError::NotPositive { index, value: format_rational(value) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("need at least 4 b2 values, got {0}")]
    TooFewValues(usize),
    #[error("b2 value at n={index} is not positive ({value})")]
    NonPositiveValue { index: usize, value: String },
    #[error("difference-table and factorization criteria disagree: {0}")]
    RouteMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("closure needs max_dim >= 4 and max_depth >= 2 (got {max_dim}, {max_depth})")]
    BadBudget { max_dim: usize, max_depth: usize },
    #[error("coefficient degree {degree} exceeds cap {cap} at depth {depth}")]
    DegreeCap { degree: i64, cap: i64, depth: usize },
    #[error("closure check failed: {0}")]
    NotClosed(String),
}
