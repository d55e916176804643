//! Exact shift-operator algebra and the Lie-closure dimension witness.
//!
//! The dimension reported here is that of the Lie algebra spanned by
//! `{I, N, a⁺, a⁻}` and all iterated commutators, with `I` counted.

pub mod closure;
pub mod shiftop;

pub use closure::{lie_closure, ClosureOptions, ClosureResult, ClosureStatus};
pub use shiftop::{
    express_in_basis, reduce_against_basis, shiftop_commutator, shiftop_mul, shiftop_to_matrix, ShiftOp,
};
