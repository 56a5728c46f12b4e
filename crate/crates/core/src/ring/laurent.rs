use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::text::parse_poly;
use super::{is_natural, join_signed_terms, monomial_text, power_text, rat, Rational, Ring};
use crate::error::{Error, Result};

/// Laurent polynomial in a single symbol (written `w` in text, standing
/// for the syzygy operator) with rational coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// The symbol itself.
    pub fn omega() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in it {
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sum of all coefficients: the value at `w = 1`.
    pub fn eval_one(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Value at a nonzero rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let p = if *e >= 0 {
                    num_traits::pow(x.clone(), *e as usize)
                } else {
                    num_traits::pow(x.recip(), (-*e) as usize)
                };
                c * p
            })
            .sum()
    }

    /// True when every coefficient is a nonnegative integer, i.e. the
    /// polynomial lies in N[w, 1/w].
    pub fn is_natural(&self) -> bool {
        self.terms.values().all(is_natural)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Parses the literal grammar with `w` as the symbol.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_symbol(text, "w")
    }

    pub fn parse_with_symbol(text: &str, symbol: &str) -> Result<Self> {
        let p = parse_poly(text, &[symbol])?;
        if p.nvars() > 1 {
            return Err(Error::Parse {
                pos: 0,
                msg: "more than one variable".into(),
            });
        }
        Ok(Self::from_terms(
            p.terms()
                .map(|(e, c)| (e.first().copied().unwrap_or(0), c.clone())),
        ))
    }

    /// Canonical text: increasing exponents, unit coefficients and unit
    /// exponents omitted.
    pub fn to_text(&self, symbol: &str) -> String {
        join_signed_terms(self.terms.iter().map(|(e, c)| {
            let power = power_text(symbol, *e);
            (c.is_negative(), monomial_text(&c.abs(), *e == 0, &power))
        }))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("w"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            let slot = out.entry(*e).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                out.remove(e);
            }
        }
        LaurentPoly { terms: out }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *out.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: out }
    }
}

super::ring_boilerplate!(LaurentPoly);

impl Ring for LaurentPoly {
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
        LaurentPoly::constant(rat(v))
    }
    fn div_i64(&self, k: i64) -> Self {
        self.scale(&(Rational::one() / rat(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(lp("w"), LaurentPoly::omega());
        let p = lp("2*w^-1 + w^3");
        assert_eq!(p.coeff(-1), rat(2));
        assert_eq!(p.coeff(3), rat(1));
        assert_eq!(p.num_terms(), 2);
        let q = lp("3*w^3 - 3*w^-1");
        assert_eq!(q.coeff(3), rat(3));
        assert_eq!(q.coeff(-1), rat(-3));
        assert_eq!(lp("-w + w"), LaurentPoly::zero());
        assert_eq!(lp("  5 "), LaurentPoly::constant(rat(5)));
    }

    #[test]
    fn parse_errors_carry_position() {
        match LaurentPoly::parse("2*w^ + 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        match LaurentPoly::parse("2*x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(LaurentPoly::parse("").is_err());
        assert!(LaurentPoly::parse("w w").is_err());
    }

    #[test]
    fn canonical_print() {
        assert_eq!(lp("w^3 + 2*w^-1").to_string(), "2*w^-1 + w^3");
        assert_eq!(lp("3*w^3 - 3*w^-1").to_string(), "-3*w^-1 + 3*w^3");
        assert_eq!(lp("0").to_string(), "0");
        assert_eq!(lp("4 + w").to_string(), "4 + w");
    }

    #[test]
    fn multiplication() {
        assert_eq!(&lp("w") * &lp("w^-1"), LaurentPoly::one());
        let s = lp("w + w^-1");
        assert_eq!(&s * &s, lp("w^2 + 2 + w^-2"));
    }

    #[test]
    fn eval_one_examples() {
        assert_eq!(lp("w^3 + 2*w^-1").eval_one(), rat(3));
        assert_eq!(LaurentPoly::zero().eval_one(), rat(0));
        assert_eq!(lp("3*w^3 - 3*w^-1").eval_one(), rat(0));
    }

    #[test]
    fn binomial_powers_split_by_parity() {
        // (w + 1/w)^n = A_n(w) + B_n(w) with A the even-index binomial terms
        // and B the odd ones; oracle: direct binomial coefficients.
        let s = lp("w + w^-1");
        for n in 0..=12u32 {
            let p = s.pow(n);
            for k in 0..=n as i64 {
                let binom = (0..k).fold(1i64, |acc, i| acc * (n as i64 - i) / (i + 1));
                assert_eq!(p.coeff(n as i64 - 2 * k), rat(binom));
            }
            assert_eq!(p.num_terms(), n as usize + 1);
        }
    }
}
