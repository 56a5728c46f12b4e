use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{join_signed_terms, monomial_text, power_text, rat, Rational, Ring};

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Exponent vectors are stored with trailing zeros stripped, so the number
/// of variables is implicit and polynomials over different variable counts
/// compose without ceremony.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<i64>, Rational>,
}

fn trim(mut e: Vec<i64>) -> Vec<i64> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

impl MultiPoly {
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, vec![])
    }

    pub fn monomial(c: Rational, exps: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        Self { terms }
    }

    /// The variable with index `i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(rat(1), e)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Self {
        let mut terms: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for (e, c) in it {
            let e = trim(e);
            let slot = terms.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent vectors are reported untrimmed up to nothing; index with
    /// `get(i).unwrap_or(0)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Highest variable index used plus one.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Minimum and maximum total degree over the support.
    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Smallest exponent of any variable in the support (0 when all
    /// exponents are nonnegative or the polynomial is zero).
    pub fn min_exponent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .min()
            .unwrap_or(0)
            .min(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = out.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                out.remove(e);
            }
        }
        Self { terms: out }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let slot = out.entry(add_exps(ea, eb)).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { terms: out }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(rat(1));
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replaces variable `var` by the constant `value`.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let k = e.get(var).copied().unwrap_or(0);
            let mut e2 = e.clone();
            if var < e2.len() {
                e2[var] = 0;
            }
            let factor = if k >= 0 {
                num_traits::pow(value.clone(), k as usize)
            } else {
                num_traits::pow(value.recip(), (-k) as usize)
            };
            (e2, c * factor)
        }))
    }

    /// Canonical text with the given symbol names.
    pub fn to_text(&self, symbols: &[&str]) -> String {
        join_signed_terms(self.terms.iter().map(|(e, c)| {
            let power: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| power_text(symbols.get(i).copied().unwrap_or("?"), i64::from(k)))
                .collect();
            (c.is_negative(), monomial_text(&c.abs(), power.is_empty(), &power.join("*")))
        }))
    }
}

super::ring_boilerplate!(MultiPoly);

impl Ring for MultiPoly {
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_i64(v: i64) -> Self {
        MultiPoly::constant(rat(v))
    }
    fn div_i64(&self, k: i64) -> Self {
        self.scale(&(Rational::one() / rat(k)))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{}", i + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_text(&refs))
    }
}
