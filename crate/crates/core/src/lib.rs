//! Generalized oscillator algebras from three-term recurrence data.
//!
//! A recurrence `x·P_n = b_n·P_{n+1} + a_n·P_n + b_{n-1}·P_{n-1}` induces
//! ladder operators `a⁺`, `a⁻` and a number operator `N`. This crate builds
//! those operators, checks their defining relations, and decides whether the
//! Lie algebra they generate is four-dimensional. The decision is made twice:
//! once from the finite-difference table of `b_n²` ([`classify`]) and once
//! by running exact commutator closure ([`liealg`]).

pub mod classify;
pub mod error;
pub mod exec;
pub mod liealg;
pub mod oscillator;
pub mod recurrence;
pub mod seqcore;

pub use error::{ClassifyError, ClosureError, ExprError, MomentError, SpecError};
pub use seqcore::{EpSeq, PolyN, Rational};
