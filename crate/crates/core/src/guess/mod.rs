//! Exact guessing of linear recurrences (constant and polynomial
//! coefficients) and algebraic equations from finitely many terms.
//!
//! Every search walks a fixed candidate order and returns the first
//! relation that holds on the whole input, so reports are deterministic.
//! A relation is only reported as found when it has been checked on a
//! verification window beyond the equations used to determine it.

mod algebraic;
mod cfinite;
mod precursive;

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cfinite::CFiniteSeq;
use crate::error::Result;
use crate::ring::{common_denominator, rat, Rational, UniPoly};

pub use algebraic::guess_algebraic;
pub use cfinite::{guess_cfinite, guess_cfinite_with_margin};
pub use precursive::{guess_precursive, guess_precursive_with_margin};

/// Verification terms demanded beyond the solve window by default.
pub const DEFAULT_MARGIN: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GuessKind {
    CFinite,
    Algebraic,
    PRecursive,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GuessStatus {
    Found,
    NotFound,
}

/// A relation recovered from data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Relation {
    /// `x_n = sum_i coeffs[i-1] x_{n-i}` for `n >= offset + coeffs.len()`.
    CFinite { coeffs: Vec<Rational>, offset: usize },
    /// `sum_i polys[i](t) y^i = 0` for the generating function `y`.
    Algebraic { polys: Vec<UniPoly> },
    /// `sum_v polys[v](n) a_{n-v} = 0` for `n >= polys.len() - 1`.
    PRecursive { polys: Vec<UniPoly> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GuessReport {
    pub kind: GuessKind,
    pub status: GuessStatus,
    pub relation: Option<Relation>,
    /// Indices of the terms entering the equations that determine the
    /// relation.
    pub fit_window: Range<usize>,
    /// Indices of the terms checked beyond the fit window.
    pub verify_window: Range<usize>,
}

impl GuessReport {
    fn not_found(kind: GuessKind) -> Self {
        Self {
            kind,
            status: GuessStatus::NotFound,
            relation: None,
            fit_window: 0..0,
            verify_window: 0..0,
        }
    }

    pub fn found(&self) -> bool {
        self.status == GuessStatus::Found
    }

    /// Recurrence coefficients of a C-finite report.
    pub fn recurrence(&self) -> Option<&[Rational]> {
        match &self.relation {
            Some(Relation::CFinite { coeffs, .. }) => Some(coeffs),
            _ => None,
        }
    }

    /// The C-finite sequence determined by a C-finite report and the data
    /// it was guessed from.
    pub fn to_cfinite(&self, terms: &[Rational]) -> Option<Result<CFiniteSeq>> {
        match &self.relation {
            Some(Relation::CFinite { coeffs, offset }) => {
                let vf = offset + coeffs.len();
                Some(CFiniteSeq::new(coeffs.clone(), vf, terms.to_vec()))
            }
            _ => None,
        }
    }

    /// Machine-readable line: `#rec ...` for recurrences, `#eq ...` for
    /// algebraic equations, `#none` otherwise.
    pub fn machine_line(&self) -> String {
        match &self.relation {
            Some(r @ Relation::Algebraic { .. }) => format!("#eq {r}"),
            Some(r) => format!("#rec {r}"),
            None => "#none".to_string(),
        }
    }
}

impl fmt::Display for GuessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GuessKind::CFinite => "cfinite",
            GuessKind::Algebraic => "algebraic",
            GuessKind::PRecursive => "precursive",
        };
        match &self.relation {
            Some(r) => write!(
                f,
                "{kind}: found {r} (fit {}..{}, verify {}..{})",
                self.fit_window.start,
                self.fit_window.end,
                self.verify_window.start,
                self.verify_window.end
            ),
            None => write!(f, "{kind}: not found within bounds"),
        }
    }
}

impl Relation {
    /// True iff the relation holds at every index the data can check.
    pub fn holds_on(&self, terms: &[Rational]) -> bool {
        match self {
            Relation::CFinite { coeffs, offset } => {
                let r = coeffs.len();
                (offset + r..terms.len()).all(|n| {
                    let rhs: Rational = coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c * &terms[n - 1 - i])
                        .sum();
                    rhs == terms[n]
                })
            }
            Relation::Algebraic { polys } => {
                let n = terms.len();
                let h = UniPoly::new(terms.to_vec());
                let mut power = UniPoly::one();
                let mut acc = UniPoly::zero();
                for p in polys {
                    acc = &acc + &(p * &power).truncate(n);
                    power = (&power * &h).truncate(n);
                }
                acc.truncate(n).is_zero()
            }
            Relation::PRecursive { polys } => {
                let r = polys.len() - 1;
                (r..terms.len()).all(|n| {
                    let x = rat(n as i64);
                    polys
                        .iter()
                        .enumerate()
                        .map(|(v, p)| p.eval(&x) * &terms[n - v])
                        .sum::<Rational>()
                        .is_zero()
                })
            }
        }
    }
}

/// True iff the report carries a relation that holds on all of `terms`.
pub fn verify_relation(terms: &[Rational], report: &GuessReport) -> bool {
    report
        .relation
        .as_ref()
        .is_some_and(|r| r.holds_on(terms))
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::CFinite { coeffs, offset } => {
                let terms: Vec<(bool, String)> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        let lag = format!("x[n-{}]", i + 1);
                        let mag = c.abs();
                        let body = if mag == rat(1) { lag } else { format!("{mag}*{lag}") };
                        (c.is_negative(), body)
                    })
                    .collect();
                write!(f, "x[n] = {}", crate::ring::join_signed_terms(terms))?;
                if *offset > 0 {
                    write!(f, " for n >= {}", offset + coeffs.len())?;
                }
                Ok(())
            }
            Relation::Algebraic { polys } => {
                let parts = polys
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(i, p)| {
                        let var = match i {
                            0 => String::new(),
                            1 => "y".to_string(),
                            _ => format!("y^{i}"),
                        };
                        signed_product(p, "t", &var, true)
                    });
                write!(f, "{} = 0", crate::ring::join_signed_terms(parts))
            }
            Relation::PRecursive { polys } => {
                let parts = polys
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(v, p)| {
                        let var = if v == 0 { "a[n]".to_string() } else { format!("a[n-{v}]") };
                        signed_product(p, "n", &var, false)
                    });
                write!(f, "{} = 0", crate::ring::join_signed_terms(parts))
            }
        }
    }
}

/// Polynomial text with unit coefficients dropped, highest power first
/// (`4*n - 2`) or lowest first (`1 - 4*t^2`).
pub fn poly_text(p: &UniPoly, symbol: &str, ascending: bool) -> String {
    let mut order: Vec<(usize, &Rational)> = p.coeffs().iter().enumerate().collect();
    if !ascending {
        order.reverse();
    }
    let terms = order
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => symbol.to_string(),
                _ => format!("{symbol}^{k}"),
            };
            let body = match (mono.is_empty(), mag == rat(1)) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            (c.is_negative(), body)
        });
    crate::ring::join_signed_terms(terms)
}

/// `p * var` as a signed term: a single monomial is written inline, a sum
/// is parenthesised with the sign of its first printed term pulled out.
fn signed_product(p: &UniPoly, symbol: &str, var: &str, ascending: bool) -> (bool, String) {
    let first = if ascending {
        p.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap_or_default()
    } else {
        p.leading()
    };
    let negative = first.is_negative();
    let shown = if negative { -p } else { p.clone() };
    let single = shown.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
    let text = poly_text(&shown, symbol, ascending);
    let body = match (var.is_empty(), single, text.as_str()) {
        (true, _, _) => text,
        (false, true, "1") => var.to_string(),
        (false, true, _) => format!("{text}*{var}"),
        (false, false, _) => format!("({text})*{var}"),
    };
    (negative, body)
}

/// Scales a rational vector to coprime integers (as rationals).
pub(crate) fn primitive_integer(v: &[Rational]) -> Vec<Rational> {
    let d = common_denominator(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Coefficient vector flattened into per-block polynomials of `width`
/// coefficients each.
pub(crate) fn split_polys(v: &[Rational], width: usize) -> Vec<UniPoly> {
    v.chunks(width).map(|c| UniPoly::new(c.to_vec())).collect()
}
