//! Eventually polynomial sequences.
//!
//! An [`EpSeq`] is a sequence on `n ≥ 0` that agrees with a polynomial tail
//! from some index `n₀` onward and carries finitely many exceptional values
//! before it. Boundary spikes such as `δ(n)·c` live here exactly: the spike
//! is the prefix `[c]` over a zero tail.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg;
use super::poly::PolyN;
use super::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawEpSeq")]
pub struct EpSeq {
    #[serde(with = "super::rational::serde_rational_vec")]
    prefix: Vec<Rational>,
    tail: PolyN,
}

#[derive(Deserialize)]
struct RawEpSeq {
    #[serde(with = "super::rational::serde_rational_vec", default)]
    prefix: Vec<Rational>,
    tail: PolyN,
}

impl From<RawEpSeq> for EpSeq {
    fn from(raw: RawEpSeq) -> Self {
        EpSeq::new(raw.prefix, raw.tail)
    }
}

impl EpSeq {
    /// Builds the canonical form: trailing prefix entries that already agree
    /// with the tail are absorbed, so `n₀` is minimal.
    pub fn new(mut prefix: Vec<Rational>, tail: PolyN) -> Self {
        while let Some(last) = prefix.last() {
            let n = prefix.len() as i64 - 1;
            if *last == tail.eval_at(n) {
                prefix.pop();
            } else {
                break;
            }
        }
        EpSeq { prefix, tail }
    }

    pub fn poly(tail: PolyN) -> Self {
        EpSeq { prefix: Vec::new(), tail }
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(PolyN::constant(c))
    }

    pub fn zero() -> Self {
        Self::poly(PolyN::zero())
    }

    /// `c` at `n = 0`, zero elsewhere.
    pub fn spike(c: Rational) -> Self {
        Self::new(vec![c], PolyN::zero())
    }

    /// Zero for `n < from`, one afterwards.
    pub fn indicator_from(from: usize) -> Self {
        Self::new(vec![Rational::zero(); from], PolyN::constant(Rational::one()))
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &PolyN {
        &self.tail
    }

    /// Index from which the tail applies.
    pub fn n0(&self) -> usize {
        self.prefix.len()
    }

    pub fn at(&self, n: usize) -> Rational {
        match self.prefix.get(n) {
            Some(v) => v.clone(),
            None => self.tail.eval_at(n as i64),
        }
    }

    /// Value at a possibly negative index; negative indices read the tail
    /// polynomial's natural extension.
    pub fn at_extended(&self, n: i64) -> Rational {
        if n < 0 {
            self.tail.eval_at(n)
        } else {
            self.at(n as usize)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_zero()
    }

    /// The constant value, if the sequence is constant for every `n ≥ 0`.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.prefix.is_empty() && self.tail.degree() <= 0 {
            Some(self.tail.coeff(0))
        } else {
            None
        }
    }

    /// `n ↦ s(n + d)`. For negative `d` the first `|d|` entries come from
    /// the tail extension; callers that need a boundary value there mask it.
    pub fn shift(&self, d: i64) -> EpSeq {
        if d == 0 {
            return self.clone();
        }
        let n0 = (self.n0() as i64 - d).max(0) as usize;
        let prefix = (0..n0).map(|n| self.at_extended(n as i64 + d)).collect();
        EpSeq::new(prefix, self.tail.shift(d))
    }

    /// `n ↦ s(n+1) − s(n)`.
    pub fn difference(&self) -> EpSeq {
        &self.shift(1) - self
    }

    pub fn scale(&self, c: &Rational) -> EpSeq {
        if c.is_zero() {
            return EpSeq::zero();
        }
        EpSeq { prefix: self.prefix.iter().map(|x| x * c).collect(), tail: self.tail.scale(c) }
    }

    /// Exact coordinates relative to a common split point `n0 ≥ self.n0()`
    /// and tail length `tail_len > degree`: values at `0..n0` followed by
    /// tail coefficients. Two sequences are equal iff their coordinates are.
    pub fn coordinates(&self, n0: usize, tail_len: usize) -> Vec<Rational> {
        debug_assert!(n0 >= self.n0());
        debug_assert!(tail_len as i64 > self.tail.degree());
        (0..n0).map(|n| self.at(n)).chain((0..tail_len).map(|i| self.tail.coeff(i))).collect()
    }

    fn zip_with(&self, rhs: &EpSeq, op: impl Fn(&Rational, &Rational) -> Rational, tail: PolyN) -> EpSeq {
        let n0 = self.n0().max(rhs.n0());
        let prefix = (0..n0).map(|n| op(&self.at(n), &rhs.at(n))).collect();
        EpSeq::new(prefix, tail)
    }
}

/// Split point and tail length shared by every sequence in `seqs`.
pub fn common_frame<'a>(seqs: impl IntoIterator<Item = &'a EpSeq>) -> (usize, usize) {
    seqs.into_iter().fold((0, 0), |(n0, len), s| (n0.max(s.n0()), len.max((s.tail.degree() + 1) as usize)))
}

/// Rationals `c`, not all zero, with `Σ cᵢ·sᵢ = 0` for every `n ≥ 0`, or
/// `None` if the sequences are linearly independent. The first nonzero
/// coefficient is normalized to 1.
pub fn linear_dependence(seqs: &[EpSeq]) -> Option<Vec<Rational>> {
    let (n0, len) = common_frame(seqs);
    let columns: Vec<Vec<Rational>> = seqs.iter().map(|s| s.coordinates(n0, len)).collect();
    linalg::null_vector(&columns)
}

impl Add for &EpSeq {
    type Output = EpSeq;
    fn add(self, rhs: &EpSeq) -> EpSeq {
        self.zip_with(rhs, |a, b| a + b, &self.tail + &rhs.tail)
    }
}

impl Sub for &EpSeq {
    type Output = EpSeq;
    fn sub(self, rhs: &EpSeq) -> EpSeq {
        self.zip_with(rhs, |a, b| a - b, &self.tail - &rhs.tail)
    }
}

impl Mul for &EpSeq {
    type Output = EpSeq;
    fn mul(self, rhs: &EpSeq) -> EpSeq {
        self.zip_with(rhs, |a, b| a * b, &self.tail * &rhs.tail)
    }
}

impl Neg for &EpSeq {
    type Output = EpSeq;
    fn neg(self) -> EpSeq {
        EpSeq { prefix: self.prefix.iter().map(|x| -x).collect(), tail: -&self.tail }
    }
}

impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            return write!(f, "{}", self.tail);
        }
        let prefix: Vec<String> = self.prefix.iter().map(format_rational).collect();
        write!(f, "[{}] then {}", prefix.join(", "), self.tail)
    }
}
