//! Three-term recurrence specifications.
//!
//! A [`RecurrenceSpec`] stores `b_n²` and `a_n` as exact eventually polynomial
//! sequences together with one sign for every `b_n`. The boundary
//! `b_{−1} = 0` is not stored; consumers apply it where they need it.

pub mod expr;
pub mod file;
pub mod moments;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SpecError;
use crate::seqcore::rational::{ceil_to_i64, format_rational, int, sqrt_exact, to_f64};
use crate::seqcore::{EpSeq, PolyN, Rational};

pub use expr::{parse_coeff_expr, parse_expr, Expr};
pub use moments::{moments_to_recurrence, MomentRecurrence, MomentSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BSign {
    #[default]
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl BSign {
    pub fn factor(self) -> f64 {
        match self {
            BSign::Positive => 1.0,
            BSign::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> BSign {
        match self {
            BSign::Positive => BSign::Negative,
            BSign::Negative => BSign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub label: String,
    /// `b_n²` for `n ≥ 0`.
    pub b2: EpSeq,
    /// Diagonal coefficients `a_n`.
    pub a: EpSeq,
    pub b_sign: BSign,
}

impl RecurrenceSpec {
    pub fn new(label: impl Into<String>, b2: EpSeq, a: EpSeq, b_sign: BSign) -> Self {
        RecurrenceSpec { label: label.into(), b2, a, b_sign }
    }

    /// Symmetric spec (`a = 0`, positive `b_n`) with polynomial `b_n²`.
    pub fn symmetric(label: impl Into<String>, b2: PolyN) -> Self {
        Self::new(label, EpSeq::poly(b2), EpSeq::zero(), BSign::Positive)
    }

    pub fn is_symmetric(&self) -> bool {
        self.a.is_zero()
    }

    pub fn validate(&self) -> ValidationReport {
        match first_nonpositive(&self.b2) {
            None => ValidationReport { violation: None },
            Some((index, value)) => ValidationReport { violation: Some((index, value)) },
        }
    }

    pub fn ensure_valid(&self) -> Result<(), SpecError> {
        match self.validate().violation {
            None => Ok(()),
            Some((index, value)) => Err(SpecError::not_positive(index, &value)),
        }
    }

    /// `b_n` as a float, with the sign convention applied.
    pub fn b_float(&self, n: usize) -> f64 {
        self.b_sign.factor() * to_f64(&self.b2.at(n)).sqrt()
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.b_sign {
            BSign::Positive => "+",
            BSign::Negative => "-",
        };
        write!(f, "{}: b2 = {}, a = {}, sign(b) = {}", self.label, self.b2, self.a, sign)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// First index where `b_n² ≤ 0`, with the offending value.
    pub violation: Option<(usize, Rational)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn message(&self) -> String {
        match &self.violation {
            None => "b2 positive for all n".to_string(),
            Some((n, v)) => format!("b2 not positive at n={n} (value {})", format_rational(v)),
        }
    }
}

/// First `n` with `s(n) ≤ 0`. Past the tail's Cauchy root bound the sign is
/// the leading coefficient's, so an exact scan up to one step beyond the
/// bound decides positivity for every `n`.
fn first_nonpositive(s: &EpSeq) -> Option<(usize, Rational)> {
    for (n, v) in s.prefix().iter().enumerate() {
        if !v.is_positive() {
            return Some((n, v.clone()));
        }
    }
    let n0 = s.n0();
    let last = match s.tail().cauchy_bound() {
        Some(bound) => (ceil_to_i64(&bound).unwrap_or(i64::MAX).max(0) as usize + 1).max(n0),
        None => n0,
    };
    (n0..=last).find_map(|n| {
        let v = s.tail().eval_at(n as i64);
        (!v.is_positive()).then_some((n, v))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Hermite,
    Laguerre,
}

impl FromStr for Family {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, SpecError> {
        match s.to_ascii_lowercase().as_str() {
            "hermite" => Ok(Family::Hermite),
            "laguerre" => Ok(Family::Laguerre),
            _ => Err(SpecError::UnknownFamily(s.to_string())),
        }
    }
}

/// Orthonormal Hermite polynomials for the weight `e^{−x²}`:
/// `b_n² = (n+1)/2`, `a_n = 0`.
pub fn hermite() -> RecurrenceSpec {
    let half = Rational::new(1.into(), 2.into());
    RecurrenceSpec::symmetric("hermite", PolyN::new(vec![half.clone(), half]))
}

/// Normalized Laguerre polynomials for the weight `x^α e^{−x}`:
/// `b_n = −√((n+1)(n+α+1))`, `a_n = 2n+α+1`.
pub fn laguerre(alpha: &Rational) -> Result<RecurrenceSpec, SpecError> {
    if *alpha <= -Rational::one() {
        return Err(SpecError::AlphaOutOfRange(format_rational(alpha)));
    }
    let one = Rational::one();
    let n_plus_1 = PolyN::new(vec![one.clone(), one.clone()]);
    let n_plus_alpha_1 = PolyN::new(vec![alpha + &one, one]);
    let a = PolyN::new(vec![alpha + int(1), int(2)]);
    Ok(RecurrenceSpec::new(
        format!("laguerre(alpha={})", format_rational(alpha)),
        EpSeq::poly(&n_plus_1 * &n_plus_alpha_1),
        EpSeq::poly(a),
        BSign::Negative,
    ))
}

/// Looks up a built-in family by name. Laguerre reads `alpha` from
/// `params`, defaulting to zero.
pub fn builtin_family(name: &str, params: &BTreeMap<String, Rational>) -> Result<RecurrenceSpec, SpecError> {
    match name.parse::<Family>()? {
        Family::Hermite => Ok(hermite()),
        Family::Laguerre => laguerre(&params.get("alpha").cloned().unwrap_or_else(Rational::zero)),
    }
}

/// Replaces the diagonal by zero. The oscillator algebra only sees `b_n²`,
/// so the symmetric and nonsymmetric specs generate the same algebra.
pub fn symmetrize(s: &RecurrenceSpec) -> RecurrenceSpec {
    if s.is_symmetric() {
        return s.clone();
    }
    RecurrenceSpec { label: format!("{} [symmetrized]", s.label), b2: s.b2.clone(), a: EpSeq::zero(), b_sign: s.b_sign }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolyValue {
    Exact(Rational),
    /// Some `b_k²` on the way was not a rational square.
    Float(f64),
}

impl PolyValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            PolyValue::Exact(r) => to_f64(r),
            PolyValue::Float(x) => *x,
        }
    }
}

/// `P_n(x)` by running the recurrence from `P_0 = 1`, `P_{−1} = 0`.
pub fn polynomial_eval(s: &RecurrenceSpec, n: usize, x: &Rational) -> Result<PolyValue, SpecError> {
    s.ensure_valid()?;
    let sign = match s.b_sign {
        BSign::Positive => Rational::one(),
        BSign::Negative => -Rational::one(),
    };
    let exact_b: Option<Vec<Rational>> = (0..n).map(|k| sqrt_exact(&s.b2.at(k)).map(|b| b * &sign)).collect();
    if let Some(b) = exact_b {
        let (mut prev, mut cur) = (Rational::zero(), Rational::one());
        for k in 0..n {
            let b_prev = if k == 0 { Rational::zero() } else { b[k - 1].clone() };
            let next = ((x - s.a.at(k)) * &cur - b_prev * &prev) / &b[k];
            prev = std::mem::replace(&mut cur, next);
        }
        return Ok(PolyValue::Exact(cur));
    }
    let x = to_f64(x);
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    for k in 0..n {
        let b_prev = if k == 0 { 0.0 } else { s.b_float(k - 1) };
        let next = ((x - to_f64(&s.a.at(k))) * cur - b_prev * prev) / s.b_float(k);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(PolyValue::Float(cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::rational::rat;

    fn ep(prefix: &[i64], tail: &[i64]) -> EpSeq {
        EpSeq::new(prefix.iter().map(|&x| int(x)).collect(), PolyN::from_ints(tail))
    }

    #[test]
    fn laguerre_alpha_zero() {
        let s = laguerre(&int(0)).unwrap();
        assert_eq!(s.b2, ep(&[], &[1, 2, 1]));
        assert_eq!(s.a, ep(&[], &[1, 2]));
        assert_eq!(s.b_sign, BSign::Negative);
        assert!(laguerre(&int(-2)).is_err());
        assert!(laguerre(&int(-1)).is_err());
        assert!(laguerre(&rat(-1, 2)).is_ok());
    }

    #[test]
    fn family_lookup() {
        let h = builtin_family("hermite", &BTreeMap::new()).unwrap();
        assert_eq!(h.b2, EpSeq::poly(PolyN::new(vec![rat(1, 2), rat(1, 2)])));
        assert!(h.a.is_zero());
        assert!(matches!(builtin_family("jacobi", &BTreeMap::new()), Err(SpecError::UnknownFamily(_))));
    }

    #[test]
    fn symmetrize_cases() {
        let l = laguerre(&int(0)).unwrap();
        let s = symmetrize(&l);
        assert_eq!(s.b2, l.b2);
        assert!(s.a.is_zero());
        assert_eq!(s.b_sign, l.b_sign);
        assert_eq!(symmetrize(&s), s);
        assert_eq!(symmetrize(&hermite()), hermite());
    }

    #[test]
    fn validation_examples() {
        assert!(laguerre(&int(0)).unwrap().validate().is_valid());
        let bad = RecurrenceSpec::symmetric("x", PolyN::from_ints(&[-3, 1]));
        assert_eq!(bad.validate().violation, Some((0, int(-3))));
        let dip = RecurrenceSpec::symmetric("x", PolyN::from_ints(&[5, -5, 1]));
        assert_eq!(dip.validate().violation, Some((2, int(-1))));
        assert_eq!(dip.validate().message(), "b2 not positive at n=2 (value -1)");
    }

    #[test]
    fn validation_prefix_and_late_dip() {
        let s = RecurrenceSpec::symmetric("x", PolyN::zero());
        assert_eq!(s.validate().violation, Some((0, int(0))));
        let s = RecurrenceSpec::new("x", ep(&[2, -1], &[1]), EpSeq::zero(), BSign::Positive);
        assert_eq!(s.validate().violation, Some((1, int(-1))));
        // positive until n = 10, then negative: 11 - n
        let s = RecurrenceSpec::symmetric("x", PolyN::from_ints(&[11, -1]));
        assert_eq!(s.validate().violation, Some((11, int(0))));
        // (n - 20)^2 + 1/2 never vanishes
        let p = PolyN::new(vec![rat(801, 2), int(-40), int(1)]);
        assert!(RecurrenceSpec::symmetric("x", p).validate().is_valid());
    }

    #[test]
    fn polynomial_eval_examples() {
        let l = laguerre(&int(0)).unwrap();
        assert_eq!(polynomial_eval(&l, 1, &int(0)).unwrap(), PolyValue::Exact(int(1)));
        assert_eq!(polynomial_eval(&l, 1, &int(1)).unwrap(), PolyValue::Exact(int(0)));
        assert_eq!(polynomial_eval(&hermite(), 0, &rat(3, 7)).unwrap(), PolyValue::Exact(int(1)));
        // normalized L_2 = (x^2 - 4x + 2) / 2 at x = 1
        assert_eq!(polynomial_eval(&l, 2, &int(1)).unwrap(), PolyValue::Exact(rat(-1, 2)));
    }

    #[test]
    fn polynomial_eval_float_fallback() {
        // orthonormal Hermite H_1 = sqrt(2) x
        match polynomial_eval(&hermite(), 1, &int(1)).unwrap() {
            PolyValue::Float(v) => assert!((v - 2f64.sqrt()).abs() < 1e-14),
            other => panic!("expected float fallback, got {other:?}"),
        }
        let bad = RecurrenceSpec::symmetric("x", PolyN::from_ints(&[-3, 1]));
        assert!(polynomial_eval(&bad, 1, &int(0)).is_err());
    }
}
