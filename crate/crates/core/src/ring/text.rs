//! Text grammar for polynomial literals.
//!
//! One recursive-descent parser serves every polynomial format in the
//! crate: Laurent literals in `w`, univariate literals in `t` or `n`,
//! bivariate literals in `t1, t2`, and quotients such as
//! `(1) / (1 - t1 - t2)`.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! Expressions are evaluated in the field of fractions without
//! simplification; callers decide whether a nontrivial denominator is
//! acceptable.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Sym(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str, symbols: &[&str]) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
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
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Num(v)));
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &src[start..i];
                let idx = symbols
                    .iter()
                    .position(|s| *s == word)
                    .ok_or_else(|| perr(start, format!("unknown symbol `{word}`")))?;
                out.push((start, Tok::Sym(idx)));
                continue;
            }
            _ => return Err(perr(i, format!("unexpected character `{c}`"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

type Frac = (MultiPoly, MultiPoly);

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
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc.0 = acc.0.neg();
        }
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.at += 1;
            let (n, d) = self.term()?;
            let n = if sign { n.neg() } else { n };
            acc = (acc.0.mul(&d).add(&n.mul(&acc.1)), acc.1.mul(&d));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.factor()?;
        loop {
            let divide = match self.peek() {
                Some(Tok::Star) => false,
                Some(Tok::Slash) => true,
                _ => break,
            };
            let pos = self.pos();
            self.at += 1;
            let (n, d) = self.factor()?;
            if divide {
                if n.is_zero() {
                    return Err(perr(pos, "division by zero"));
                }
                acc = (acc.0.mul(&d), acc.1.mul(&n));
            } else {
                acc = (acc.0.mul(&n), acc.1.mul(&d));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let pos = self.pos();
        let k = match self.peek() {
            Some(Tok::Num(v)) => u32::try_from(v.clone())
                .map_err(|_| perr(pos, "exponent too large"))?,
            _ => return Err(perr(pos, "expected integer exponent")),
        };
        self.at += 1;
        let (n, d) = base;
        if negative {
            if n.is_zero() {
                return Err(perr(pos, "zero raised to a negative power"));
            }
            Ok((d.pow(k), n.pow(k)))
        } else {
            Ok((n.pow(k), d.pow(k)))
        }
    }

    fn atom(&mut self) -> Result<Frac> {
        let pos = self.pos();
        let one = MultiPoly::constant(Rational::one());
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok((MultiPoly::constant(Rational::from_integer(v)), one))
            }
            Some(Tok::Sym(i)) => {
                self.at += 1;
                Ok((MultiPoly::var(i), one))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(perr(self.pos(), "expected `)`"));
                }
                self.at += 1;
                Ok(inner)
            }
            Some(t) => Err(perr(pos, format!("unexpected token {t:?}"))),
            None => Err(perr(pos, "unexpected end of input")),
        }
    }
}

/// Parses `src` into an unsimplified numerator/denominator pair over the
/// given symbols (symbol `i` becomes variable index `i`).
pub fn parse_fraction(src: &str, symbols: &[&str]) -> Result<(MultiPoly, MultiPoly)> {
    let toks = lex(src, symbols)?;
    if toks.is_empty() {
        return Err(perr(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return Err(perr(p.pos(), "trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial (Laurent monomials allowed); any division must be by
/// a nonzero constant.
pub fn parse_poly(src: &str, symbols: &[&str]) -> Result<MultiPoly> {
    let (n, d) = parse_fraction(src, symbols)?;
    match d.as_constant() {
        Some(c) if !c.is_zero() => Ok(n.scale(&c.recip())),
        _ => {
            // d may be a monomial such as w^2 coming from w^-2.
            let mut it = d.terms();
            if let (Some((e, c)), None) = (it.next(), it.next()) {
                let inv = MultiPoly::monomial(c.recip(), e.iter().map(|k| -k).collect());
                Ok(n.mul(&inv))
            } else {
                Err(perr(0, "expression is not a polynomial"))
            }
        }
    }
}
