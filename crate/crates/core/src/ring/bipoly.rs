use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::text::parse_poly;
use super::{join_signed_terms, monomial_text, power_text, rat, MultiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Sparse polynomial in two variables `t1, t2`; keys are `(i, j)` for
/// `t1^i t2^j`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in it {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// `q(t1)` or `q(t2)` lifted to two variables.
    pub fn from_uni(q: &UniPoly, axis: usize) -> Self {
        Self::from_terms(q.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            (if axis == 0 { (k, 0) } else { (0, k) }, c.clone())
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Degree in `t1` (axis 0) or `t2` (axis 1).
    pub fn degree_in(&self, axis: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if axis == 0 { i } else { j })
            .max()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn eval(&self, t1: &Rational, t2: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|((i, j), c)| {
                c * num_traits::pow(t1.clone(), *i as usize) * num_traits::pow(t2.clone(), *j as usize)
            })
            .sum()
    }

    /// Sets the variable `axis` (0 for `t1`, 1 for `t2`) to `value`, giving a
    /// polynomial in the remaining variable.
    pub fn substitute(&self, axis: usize, value: &Rational) -> UniPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for ((i, j), c) in &self.terms {
            let (keep, gone) = if axis == 0 { (*j, *i) } else { (*i, *j) };
            let keep = keep as usize;
            if coeffs.len() <= keep {
                coeffs.resize(keep + 1, Rational::zero());
            }
            coeffs[keep] += c * num_traits::pow(value.clone(), gone as usize);
        }
        UniPoly::new(coeffs)
    }

    /// Coefficients of successive powers of `t2`, each a polynomial in `t1`.
    fn rows(&self) -> Vec<UniPoly> {
        let deg = match self.degree_in(1) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut raw: Vec<Vec<Rational>> = vec![Vec::new(); deg + 1];
        for ((i, j), c) in &self.terms {
            let row = &mut raw[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, Rational::zero());
            }
            row[*i as usize] = c.clone();
        }
        raw.into_iter().map(UniPoly::new).collect()
    }

    fn from_rows(rows: &[UniPoly]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(j, r)| {
            r.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| ((i as u32, j as u32), c.clone()))
        }))
    }

    fn content(rows: &[UniPoly]) -> UniPoly {
        rows.iter().fold(UniPoly::zero(), |g, r| g.gcd(r))
    }

    fn primitive_rows(rows: &[UniPoly]) -> Vec<UniPoly> {
        let c = Self::content(rows);
        if c.is_zero() {
            return Vec::new();
        }
        rows.iter()
            .map(|r| r.div_exact(&c).expect("content divides every row"))
            .collect()
    }

    /// Pseudo-remainder of `a` by `b` as polynomials in `t2` over `Q[t1]`.
    fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        let lb = b.last().expect("nonzero divisor").clone();
        let db = b.len() - 1;
        let mut r: Vec<UniPoly> = a.to_vec();
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for x in r.iter_mut() {
                *x = &*x * &lb;
            }
            for (k, bk) in b.iter().enumerate() {
                r[k + shift] = &r[k + shift] - &(&lr * bk);
            }
            while r.last().is_some_and(UniPoly::is_zero) {
                r.pop();
            }
        }
        r
    }

    /// Greatest common divisor over `Q`, normalised so that its lowest
    /// monomial (in key order) has coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (ra, rb) = (self.rows(), other.rows());
        let c = Self::content(&ra).gcd(&Self::content(&rb));
        let (mut a, mut b) = (Self::primitive_rows(&ra), Self::primitive_rows(&rb));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = Self::prem(&a, &b);
            a = b;
            b = Self::primitive_rows(&r);
        }
        let g: Vec<UniPoly> = a.iter().map(|r| r * &c).collect();
        Self::from_rows(&g).normalized()
    }

    fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let db = d.rows();
        let lb = db.last().unwrap().clone();
        let mut r = self.rows();
        let mut q: Vec<UniPoly> = vec![UniPoly::zero(); r.len().saturating_sub(db.len() - 1).max(1)];
        while r.len() >= db.len() && !r.is_empty() {
            let shift = r.len() - db.len();
            let c = r.last().unwrap().div_exact(&lb)?;
            for (k, bk) in db.iter().enumerate() {
                r[k + shift] = &r[k + shift] - &(&c * bk);
            }
            q[shift] = &q[shift] + &c;
            while r.last().is_some_and(UniPoly::is_zero) {
                r.pop();
            }
        }
        r.is_empty().then(|| Self::from_rows(&q))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_multi(&parse_poly(text, &["t1", "t2"])?)
    }

    /// Two-variable view of a `MultiPoly`; negative exponents are rejected.
    pub fn from_multi(p: &MultiPoly) -> Result<Self> {
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            let i = e.first().copied().unwrap_or(0);
            let j = e.get(1).copied().unwrap_or(0);
            if i < 0 || j < 0 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "negative exponent in bivariate polynomial".into(),
                });
            }
            terms.push(((i as u32, j as u32), c.clone()));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn to_text(&self) -> String {
        join_signed_terms(self.terms.iter().map(|((i, j), c)| {
            let power: Vec<String> = [("t1", *i), ("t2", *j)]
                .into_iter()
                .filter(|(_, k)| *k > 0)
                .map(|(name, k)| power_text(name, i64::from(k)))
                .collect();
            (c.is_negative(), monomial_text(&c.abs(), power.is_empty(), &power.join("*")))
        }))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().flat_map(|((i, j), a)| {
            rhs.terms
                .iter()
                .map(move |((k, l), b)| ((i + k, j + l), a * b))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> BiPoly {
        BiPoly::parse(s).unwrap()
    }

    #[test]
    fn gcd_finds_shared_factor() {
        let f = bp("1 - t1*t2");
        let a = &f * &bp("1 + t1 + t2^2");
        let b = &f * &bp("2 - t2");
        let g = a.gcd(&b);
        assert_eq!(g, f);
        assert_eq!(a.div_exact(&g).unwrap(), bp("1 + t1 + t2^2"));
        assert_eq!(bp("1 - t1 - t2").gcd(&bp("1 - t1*t2")), BiPoly::one());
    }

    #[test]
    fn gcd_with_univariate_content() {
        let a = bp("(1 - t1)^2 * (1 + t2)");
        let b = bp("(1 - t1) * (3 + t1*t2)");
        assert_eq!(a.gcd(&b), bp("1 - t1"));
    }

    #[test]
    fn substitution() {
        assert_eq!(bp("1 - t1*t2").substitute(1, &rat(1)), UniPoly::from_i64s(&[1, -1]));
        assert_eq!(bp("1 - t1 - t2").substitute(1, &rat(1)), UniPoly::from_i64s(&[0, -1]));
        assert_eq!(bp("t1 + 3*t2^2").substitute(0, &rat(2)), UniPoly::from_i64s(&[2, 0, 3]));
    }

    #[test]
    fn canonical_round_trip() {
        let p = bp("3 - 2*t1^2*t2 + 1/2*t2^3");
        assert_eq!(bp(&p.to_text()), p);
    }
}
