use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::text::parse_poly;
use super::{join_signed_terms, monomial_text, power_text, rat, MultiPoly, Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Power series quotient `self / den` truncated to `n` coefficients.
    /// Requires `den(0) != 0`.
    pub fn series_div(&self, den: &Self, n: usize) -> Result<Vec<Rational>> {
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for (i, dc) in den.coeffs.iter().enumerate().skip(1).take(k) {
                acc -= dc * &out[k - i];
            }
            out.push(acc * &inv0);
        }
        Ok(out)
    }

    /// Keeps coefficients of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `x^d * p(1/x)` for `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Unique polynomial of degree `< points.len()` through the points.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::one();
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &Self::new(vec![-xj, rat(1)]);
                    denom *= xi - xj;
                }
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        acc
    }

    pub fn parse(text: &str, symbol: &str) -> Result<Self> {
        Self::from_multi(&parse_poly(text, &[symbol])?)
    }

    /// Univariate view of a one-variable `MultiPoly`; negative exponents
    /// are rejected.
    pub fn from_multi(p: &MultiPoly) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (e, c) in p.terms() {
            let k = e.first().copied().unwrap_or(0);
            if k < 0 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("negative exponent {k} in polynomial literal"),
                });
            }
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    /// Canonical text in the given symbol, increasing degree.
    pub fn to_text(&self, symbol: &str) -> String {
        join_signed_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let power = power_text(symbol, k as i64);
                    (c.is_negative(), monomial_text(&c.abs(), k == 0, &power))
                }),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
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
        UniPoly::new(out)
    }
}

super::ring_boilerplate!(UniPoly);

impl Ring for UniPoly {
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
        UniPoly::constant(rat(v))
    }
    fn div_i64(&self, k: i64) -> Self {
        self.scale(&(Rational::one() / rat(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let a = UniPoly::from_i64s(&[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_i64s(&[1, 1]); // 1 + t
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.div_exact(&b), Some(UniPoly::from_i64s(&[-1, 1])));
        assert_eq!(a.div_exact(&UniPoly::from_i64s(&[2, 1])), None);
        let c = UniPoly::from_i64s(&[1, -1, -1]);
        assert_eq!(a.gcd(&c), UniPoly::one());
    }

    #[test]
    fn series_division_fibonacci() {
        let num = UniPoly::from_i64s(&[0, 1]);
        let den = UniPoly::from_i64s(&[1, -1, -1]);
        let s = num.series_div(&den, 11).unwrap();
        let fib: Vec<Rational> = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55].iter().map(|&v| rat(v)).collect();
        assert_eq!(s, fib);
        assert!(num.series_div(&UniPoly::x(), 3).is_err());
    }

    #[test]
    fn parse_and_print() {
        let p = UniPoly::parse("2 + 3*n", "n").unwrap();
        assert_eq!(p, UniPoly::from_i64s(&[2, 3]));
        assert_eq!(p.to_text("n"), "2 + 3*n");
        assert_eq!(UniPoly::parse(&p.to_text("n"), "n").unwrap(), p);
        let q = UniPoly::parse("9/2*n - 1/3", "n").unwrap();
        assert_eq!(q.coeff(1), super::super::ratio(9, 2));
        assert!(UniPoly::parse("n^-1", "n").is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::from_i64s(&[3, -2, 0, 5]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i), p.eval(&rat(i)))).collect();
        assert_eq!(UniPoly::interpolate(&pts), p);
    }
}
