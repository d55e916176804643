//! Coefficient expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-'? atom ('^' natural)?
//! atom   := rational | 'n' | identifier | '(' expr ')'
//! ```
//!
//! Rational literals are `digits` or `digits/digits`. `n` is the index
//! variable; any other identifier is a parameter bound at lowering time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ExprError;
use crate::seqcore::{PolyN, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Index,
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Expands to a canonical polynomial in `n`.
    pub fn lower(&self, bindings: &BTreeMap<String, Rational>) -> Result<PolyN, ExprError> {
        Ok(match self {
            Expr::Num(r) => PolyN::constant(r.clone()),
            Expr::Index => PolyN::var(),
            Expr::Param(name) => {
                PolyN::constant(bindings.get(name).cloned().ok_or_else(|| ExprError::Unbound(name.clone()))?)
            }
            Expr::Neg(e) => -&e.lower(bindings)?,
            Expr::Add(a, b) => &a.lower(bindings)? + &b.lower(bindings)?,
            Expr::Sub(a, b) => &a.lower(bindings)? - &b.lower(bindings)?,
            Expr::Mul(a, b) => &a.lower(bindings)? * &b.lower(bindings)?,
            Expr::Pow(base, k) => {
                let base = base.lower(bindings)?;
                (0..*k).fold(PolyN::constant(Rational::one()), |acc, _| &acc * &base)
            }
        })
    }

    /// Direct interpretation at a given index, without expanding.
    pub fn eval(&self, n: &Rational, bindings: &BTreeMap<String, Rational>) -> Result<Rational, ExprError> {
        Ok(match self {
            Expr::Num(r) => r.clone(),
            Expr::Index => n.clone(),
            Expr::Param(name) => bindings.get(name).cloned().ok_or_else(|| ExprError::Unbound(name.clone()))?,
            Expr::Neg(e) => -e.eval(n, bindings)?,
            Expr::Add(a, b) => a.eval(n, bindings)? + b.eval(n, bindings)?,
            Expr::Sub(a, b) => a.eval(n, bindings)? - b.eval(n, bindings)?,
            Expr::Mul(a, b) => a.eval(n, bindings)? * b.eval(n, bindings)?,
            Expr::Pow(base, k) => {
                let b = base.eval(n, bindings)?;
                (0..*k).fold(Rational::one(), |acc, _| acc * &b)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            let digits = &text[chars[start].0..end];
            out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            out.push((pos, Tok::Ident(text[chars[start].0..end].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(ExprError::Syntax { pos, msg: format!("unexpected character `{other}`") }),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            let exponent = match self.bump() {
                Some(Tok::Num(k)) if !matches!(self.peek(), Some(Tok::Slash)) => k,
                _ => return Err(ExprError::BadExponent { pos }),
            };
            let k = u32::try_from(exponent).map_err(|_| ExprError::BadExponent { pos })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(p)) => {
                self.bump();
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let q = match self.bump() {
                        Some(Tok::Num(q)) if !q.is_zero() => q,
                        _ => {
                            self.at -= 1;
                            return self.syntax("expected nonzero denominator");
                        }
                    };
                    return Ok(Expr::Num(Rational::new(p, q)));
                }
                Ok(Expr::Num(Rational::from_integer(p)))
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(if name == "n" { Expr::Index } else { Expr::Param(name) })
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.at -= 1;
                        self.syntax("expected `)`")
                    }
                }
            }
            Some(_) => self.syntax("expected a number, `n`, a parameter, or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.syntax("trailing input");
    }
    Ok(e)
}

/// Parses `text` and expands it to a polynomial in `n` with `bindings`
/// substituted for parameters.
pub fn parse_coeff_expr(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<PolyN, ExprError> {
    parse_expr(text)?.lower(bindings)
}
