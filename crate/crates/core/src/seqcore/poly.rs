//! Polynomials in the index variable `n` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, Rational};

/// `Σ coeffs[i]·nⁱ`, trailing zeros stripped. The zero polynomial has no
/// coefficients and degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyN {
    #[serde(with = "super::rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl PolyN {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyN { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyN { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `n`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `nⁱ`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * n + c)
    }

    /// Evaluation at an integer, negative arguments allowed.
    pub fn eval_at(&self, n: i64) -> Rational {
        self.eval(&int(n))
    }

    pub fn scale(&self, c: &Rational) -> PolyN {
        if c.is_zero() {
            return PolyN::zero();
        }
        PolyN::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// The polynomial `n ↦ p(n + d)`.
    pub fn shift(&self, d: i64) -> PolyN {
        if d == 0 || self.degree() < 1 {
            return self.clone();
        }
        let step = PolyN::new(vec![int(d), Rational::one()]);
        self.coeffs.iter().rev().fold(PolyN::zero(), |acc, c| &(&acc * &step) + &PolyN::constant(c.clone()))
    }

    /// `p(n+1) - p(n)`.
    pub fn forward_difference(&self) -> PolyN {
        &self.shift(1) - self
    }

    /// Cauchy bound: every real root lies in `|x| < 1 + max |cᵢ / c_d|`.
    /// `None` for constants, which have no roots to bound.
    pub fn cauchy_bound(&self) -> Option<Rational> {
        if self.degree() < 1 {
            return None;
        }
        let lead = self.leading()?.abs();
        let max =
            self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
        Some(max + Rational::one())
    }
}

impl Add for &PolyN {
    type Output = PolyN;
    fn add(self, rhs: &PolyN) -> PolyN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyN::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyN {
    type Output = PolyN;
    fn sub(self, rhs: &PolyN) -> PolyN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyN::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyN {
    type Output = PolyN;
    fn mul(self, rhs: &PolyN) -> PolyN {
        if self.is_zero() || rhs.is_zero() {
            return PolyN::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyN::new(out)
    }
}

impl Neg for &PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        PolyN { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}
