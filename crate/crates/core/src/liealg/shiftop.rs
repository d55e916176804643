//! Shift operators `Σ_k f_k · Λ^k` over a fixed recurrence.
//!
//! `Λ^k` is `(a⁺)^k` for `k > 0`, `(a⁻)^{|k|}` for `k < 0` and the identity
//! for `k = 0`. Each coefficient is indexed by the *lower* endpoint of the
//! transition it weights: the term at shift `k` sends `P_n` to
//!
//! ```text
//! c_k(m) · W_{|k|}(m) · P_{n+k},   m = min(n, n+k),
//! W_j(m) = Π_{i=m}^{m+j−1} √2·b_i
//! ```
//!
//! and vanishes when `n + k < 0`. Every value `c_k(m)`, `m ≥ 0`, is seen by
//! some basis vector, so the representation is unique and linear algebra on
//! coefficients is linear algebra on operators.
//!
//! Products stay exact because a path that walks a bond `i` twice (up and
//! back down, or down and back up) picks up `(√2·b_i)² = 2·b_i²`, which is
//! rational. This is the rewrite `a⁻a⁺ → 2B(N+I)`, `a⁺a⁻ → 2B(N)` applied
//! once per contracted pair.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::SpecError;
use crate::oscillator::TruncatedOperator;
use crate::recurrence::RecurrenceSpec;
use crate::seqcore::rational::{int, to_f64};
use crate::seqcore::{linalg, EpSeq, PolyN, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ShiftOp {
    terms: BTreeMap<i64, EpSeq>,
}

impl ShiftOp {
    pub fn zero() -> Self {
        ShiftOp::default()
    }

    /// Single term `f · Λ^shift`.
    pub fn term(shift: i64, coeff: EpSeq) -> Self {
        let mut op = ShiftOp::zero();
        op.add_term(shift, coeff);
        op
    }

    pub fn identity() -> Self {
        Self::term(0, EpSeq::constant(int(1)))
    }

    pub fn number() -> Self {
        Self::term(0, EpSeq::poly(PolyN::var()))
    }

    pub fn raising() -> Self {
        Self::term(1, EpSeq::constant(int(1)))
    }

    pub fn lowering() -> Self {
        Self::term(-1, EpSeq::constant(int(1)))
    }

    /// Diagonal operator `f(N)`.
    pub fn diagonal(f: EpSeq) -> Self {
        Self::term(0, f)
    }

    /// The generators `I, N, a⁺, a⁻`, in that order.
    pub fn generators() -> Vec<ShiftOp> {
        vec![Self::identity(), Self::number(), Self::raising(), Self::lowering()]
    }

    pub fn terms(&self) -> &BTreeMap<i64, EpSeq> {
        &self.terms
    }

    pub fn coeff(&self, shift: i64) -> Option<&EpSeq> {
        self.terms.get(&shift)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest tail degree among the coefficients.
    pub fn max_degree(&self) -> i64 {
        self.terms.values().map(|c| c.tail().degree()).max().unwrap_or(-1)
    }

    /// Largest `|k|` among the terms.
    pub fn max_shift(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    fn add_term(&mut self, shift: i64, coeff: EpSeq) {
        let sum = match self.terms.remove(&shift) {
            Some(existing) => &existing + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(shift, sum);
        }
    }

    pub fn add(&self, rhs: &ShiftOp) -> ShiftOp {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &ShiftOp) -> ShiftOp {
        self.add(&rhs.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> ShiftOp {
        if c.is_zero() {
            return ShiftOp::zero();
        }
        ShiftOp { terms: self.terms.iter().map(|(k, f)| (*k, f.scale(c))).collect() }
    }

    /// `Σ λᵢ·opsᵢ`.
    pub fn combination(ops: &[ShiftOp], lambdas: &[Rational]) -> ShiftOp {
        ops.iter().zip(lambdas).fold(ShiftOp::zero(), |acc, (op, l)| acc.add(&op.scale(l)))
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})·a+"),
                -1 => format!("({c})·a-"),
                k if *k > 0 => format!("({c})·(a+)^{k}"),
                k => format!("({c})·(a-)^{}", -k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

struct TermRef<'a>(i64, &'a EpSeq);

impl Serialize for TermRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("coeff", self.1)?;
        map.serialize_entry("shift", &self.0)?;
        map.end()
    }
}

/// A single-term operator serializes as `{"shift": k, "coeff": {...}}`;
/// anything else as `{"terms": [...]}`.
impl Serialize for ShiftOp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().expect("one term");
            return TermRef(*k, c).serialize(s);
        }
        struct Terms<'a>(&'a BTreeMap<i64, EpSeq>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    seq.serialize_element(&TermRef(*k, c))?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("terms", &Terms(&self.terms))?;
        map.end()
    }
}

/// Coefficient of `(f·Λ^j)·(g·Λ^k)` as a function of the lower endpoint of
/// the combined transition.
fn product_term(j: i64, f: &EpSeq, k: i64, g: &EpSeq, bond: &mut BondCache<'_>) -> EpSeq {
    let s = j + k;
    // positions relative to m = min(source, target)
    let source = if s >= 0 { 0 } else { -s };
    let mid = source + k;
    let target = source + s;
    let mut coeff = &f.shift(mid.min(target)) * &g.shift(source.min(mid));
    let contracted = if k > 0 && j < 0 {
        source.max(target)..mid
    } else if k < 0 && j > 0 {
        mid..source.min(target)
    } else {
        0..0
    };
    for i in contracted {
        if coeff.is_zero() {
            break;
        }
        coeff = &coeff * bond.get(i);
    }
    if mid < 0 {
        coeff = &coeff * &EpSeq::indicator_from((-mid) as usize);
    }
    coeff
}

/// `m ↦ 2·b²(m + i)`, memoized per offset.
struct BondCache<'a> {
    b2: &'a EpSeq,
    shifted: BTreeMap<i64, EpSeq>,
}

impl<'a> BondCache<'a> {
    fn new(b2: &'a EpSeq) -> Self {
        BondCache { b2, shifted: BTreeMap::new() }
    }

    fn get(&mut self, offset: i64) -> &EpSeq {
        let b2 = self.b2;
        self.shifted.entry(offset).or_insert_with(|| b2.shift(offset).scale(&int(2)))
    }
}

/// The product `A·B` in canonical form.
pub fn shiftop_mul(a: &ShiftOp, b: &ShiftOp, s: &RecurrenceSpec) -> ShiftOp {
    let mut bonds = BondCache::new(&s.b2);
    let mut out = ShiftOp::zero();
    for (j, f) in &a.terms {
        for (k, g) in &b.terms {
            let c = product_term(*j, f, *k, g, &mut bonds);
            out.add_term(j + k, c);
        }
    }
    out
}

/// `[A, B] = AB − BA`.
pub fn shiftop_commutator(a: &ShiftOp, b: &ShiftOp, s: &RecurrenceSpec) -> ShiftOp {
    shiftop_mul(a, b, s).sub(&shiftop_mul(b, a, s))
}

/// Matrix of `A` on `span{P_0, …, P_{dim−1}}`.
pub fn shiftop_to_matrix(a: &ShiftOp, s: &RecurrenceSpec, dim: usize) -> Result<TruncatedOperator, SpecError> {
    s.ensure_valid()?;
    let bond: Vec<f64> = (0..dim).map(|i| std::f64::consts::SQRT_2 * s.b_float(i)).collect();
    let mut out = TruncatedOperator::zeros(dim, a.to_string());
    for (k, c) in &a.terms {
        let span = k.unsigned_abs() as usize;
        for m in 0..dim.saturating_sub(span) {
            let weight: f64 = bond[m..m + span].iter().product();
            let v = to_f64(&c.at(m)) * weight;
            let (row, col) = if *k >= 0 { (m + span, m) } else { (m, m + span) };
            out.set(row, col, v);
        }
    }
    Ok(out)
}

/// Per-shift coordinate frames `(shift, n0, tail_len)` covering `ops`.
fn frames<'a>(ops: impl IntoIterator<Item = &'a ShiftOp>) -> Vec<(i64, usize, usize)> {
    let mut by_shift: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for op in ops {
        for (k, c) in &op.terms {
            let e = by_shift.entry(*k).or_insert((0, 0));
            e.0 = e.0.max(c.n0());
            e.1 = e.1.max((c.tail().degree() + 1) as usize);
        }
    }
    by_shift.into_iter().map(|(k, (n0, len))| (k, n0, len)).collect()
}

fn coordinates(op: &ShiftOp, frames: &[(i64, usize, usize)]) -> Vec<Rational> {
    let mut out = Vec::new();
    for (k, n0, len) in frames {
        match op.terms.get(k) {
            Some(c) => out.extend(c.coordinates(*n0, *len)),
            None => out.extend(std::iter::repeat_n(Rational::zero(), n0 + len)),
        }
    }
    out
}

fn from_coordinates(coords: &[Rational], frames: &[(i64, usize, usize)]) -> ShiftOp {
    let mut op = ShiftOp::zero();
    let mut at = 0;
    for (k, n0, len) in frames {
        let prefix = coords[at..at + n0].to_vec();
        let tail = PolyN::new(coords[at + n0..at + n0 + len].to_vec());
        at += n0 + len;
        op.add_term(*k, EpSeq::new(prefix, tail));
    }
    op
}

/// Reduces `candidate` modulo the span of `basis` by exact elimination.
/// Returns `None` when the candidate lies in the span, otherwise the
/// nonzero residual, which vanishes on every pivot coordinate of the basis.
pub fn reduce_against_basis(candidate: &ShiftOp, basis: &[ShiftOp]) -> Option<ShiftOp> {
    if candidate.is_zero() {
        return None;
    }
    let frames = frames(basis.iter().chain(std::iter::once(candidate)));
    let mut rows: Vec<Vec<Rational>> = basis.iter().map(|b| coordinates(b, &frames)).collect();
    let pivots = linalg::rref(&mut rows);
    let mut residual = coordinates(candidate, &frames);
    for (row, &pc) in pivots.iter().enumerate() {
        if residual[pc].is_zero() {
            continue;
        }
        let f = residual[pc].clone();
        for (r, x) in residual.iter_mut().zip(&rows[row]) {
            *r -= &f * x;
        }
    }
    let op = from_coordinates(&residual, &frames);
    (!op.is_zero()).then_some(op)
}

/// Exact coefficients expressing `candidate` in `basis`, if it is in the
/// span.
pub fn express_in_basis(candidate: &ShiftOp, basis: &[ShiftOp]) -> Option<Vec<Rational>> {
    let frames = frames(basis.iter().chain(std::iter::once(candidate)));
    let columns: Vec<Vec<Rational>> = basis.iter().map(|b| coordinates(b, &frames)).collect();
    linalg::solve(&columns, &coordinates(candidate, &frames))
}

/// Whether the operators are linearly independent.
pub fn independent(ops: &[ShiftOp]) -> bool {
    let frames = frames(ops);
    let columns: Vec<Vec<Rational>> = ops.iter().map(|b| coordinates(b, &frames)).collect();
    linalg::null_vector(&columns).is_none()
}
