//! Exact scalar and polynomial arithmetic.
//!
//! Every computation in the crate bottoms out here. Scalars are
//! arbitrary-precision rationals; on top of them sit univariate
//! polynomials, Laurent polynomials in the symbol `w` (standing for the
//! syzygy operator), bivariate polynomials in `t1, t2`, and sparse
//! multivariate Laurent polynomials used by the text parser and by the
//! multi-variable substitution operation.

mod bipoly;
mod laurent;
mod multipoly;
pub mod text;
mod unipoly;

pub use bipoly::BiPoly;
pub use laurent::LaurentPoly;
pub use multipoly::MultiPoly;
pub use unipoly::UniPoly;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational `p/q`. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_from_big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational literal `{s}`"),
    };
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("zero denominator in `{s}`"),
            });
        }
        Ok(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(p))
    }
}

/// Parses a comma separated list of rational literals. Empty input gives
/// an empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(parse_rational)
        .collect()
}

/// True when `v` is an integer.
pub fn is_integer(v: &Rational) -> bool {
    v.denom().is_one()
}

pub fn is_natural(v: &Rational) -> bool {
    is_integer(v) && !v.is_negative()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    vals.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Commutative ring interface used by the generic matrix and recurrence
/// code. Coefficients are rational, so division by a nonzero machine
/// integer is always exact.
pub trait Ring: Clone + PartialEq + Debug + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn div_i64(&self, k: i64) -> Self;
}

impl Ring for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn div_i64(&self, k: i64) -> Self {
        self / rat(k)
    }
}

/// Owned `Add`/`Mul` and `Zero`/`One` for a polynomial type that already
/// has by-reference arithmetic and inherent `zero`, `one`, `is_zero`.
macro_rules! ring_boilerplate {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                crate::ring::Ring::plus(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                crate::ring::Ring::times(&self, &rhs)
            }
        }
        impl num_traits::Zero for $t {
            fn zero() -> $t {
                <$t>::zero()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
        }
        impl num_traits::One for $t {
            fn one() -> $t {
                <$t>::one()
            }
        }
    };
}
pub(crate) use ring_boilerplate;

/// `c*m`, or `m` when `c = 1`; `power` is ignored for the constant term.
pub(crate) fn monomial_text(abs_coeff: &Rational, constant: bool, power: &str) -> String {
    if constant {
        abs_coeff.to_string()
    } else if abs_coeff.is_one() {
        power.to_string()
    } else {
        format!("{abs_coeff}*{power}")
    }
}

/// `x` for exponent 1, `x^k` otherwise.
pub(crate) fn power_text(symbol: &str, k: i64) -> String {
    if k == 1 {
        symbol.to_string()
    } else {
        format!("{symbol}^{k}")
    }
}

/// Joins unsigned term bodies with ` + ` / ` - ` according to their signs.
pub(crate) fn join_signed_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (negative, body)) in terms.into_iter().enumerate() {
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
