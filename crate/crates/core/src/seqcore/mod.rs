//! Exact scalars, index polynomials, and eventually polynomial sequences.

pub mod epseq;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use epseq::{linear_dependence, EpSeq};
pub use poly::PolyN;
pub use rational::Rational;
