//! C-finite sequences: eventually linearly recursive sequences with
//! constant rational coefficients, and their rational generating functions.
//!
//! A [`CFiniteSeq`] stores the recurrence `x_n = c_1 x_{n-1} + .. + c_r x_{n-r}`,
//! the index `valid_from` from which it holds, and the explicit terms
//! `x_0 .. x_{valid_from - 1}`. Closure operations build a recurrence that
//! is correct by construction (product of denominators, characteristic
//! polynomial of a Kronecker product or of a matrix power), check it against
//! the termwise definition, and then reduce it to the minimal one through
//! the generating function.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{companion, recurrence_from_char_poly};
use crate::ring::{parse_rational_list, rat, Rational, UniPoly};

/// Eventually linearly recursive sequence, indexed from 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CFiniteSeq {
    coeffs: Vec<Rational>,
    valid_from: usize,
    prefix: Vec<Rational>,
}

/// Reduced rational generating function `num / den` with `den(0) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    num: UniPoly,
    den: UniPoly,
}

impl HilbertSeries {
    /// Reduces `num / den` to lowest terms and normalises `den(0) = 1`.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let k = den.coeff(0).recip();
        Ok(Self {
            num: num.scale(&k),
            den: den.scale(&k),
        })
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    /// First `n` power series coefficients.
    pub fn expand(&self, n: usize) -> Vec<Rational> {
        self.num
            .series_div(&self.den, n)
            .expect("denominator has constant term 1")
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("product of unit-constant denominators")
    }

    /// Parses `(P) / (Q)` in the variable `t`.
    pub fn parse(text: &str) -> Result<Self> {
        let (n, d) = crate::ring::text::parse_fraction(text, &["t"])?;
        Self::new(UniPoly::from_multi(&n)?, UniPoly::from_multi(&d)?)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num.to_text("t"), self.den.to_text("t"))
    }
}

impl CFiniteSeq {
    /// Sequence with recurrence `coeffs` (meaning `x_n = sum_i c_i x_{n-i}`)
    /// valid for `n >= valid_from`. `prefix` must hold at least
    /// `max(valid_from, order)` terms; extra terms are checked against the
    /// recurrence and then dropped.
    pub fn new(coeffs: Vec<Rational>, valid_from: usize, prefix: Vec<Rational>) -> Result<Self> {
        let r = coeffs.len();
        let valid_from = valid_from.max(r);
        if prefix.len() < valid_from {
            return Err(Error::InvalidArgument(format!(
                "prefix has {} terms, recurrence needs {valid_from}",
                prefix.len()
            )));
        }
        let seq = Self {
            coeffs,
            valid_from,
            prefix: prefix[..valid_from].to_vec(),
        };
        for (n, v) in prefix.iter().enumerate().skip(valid_from) {
            if seq.next_from(&prefix[..n]) != *v {
                return Err(Error::InvalidArgument(format!(
                    "prefix term {n} violates the recurrence"
                )));
            }
        }
        Ok(seq)
    }

    /// Recurrence with integer coefficients and initial values; valid from
    /// the order onward.
    pub fn from_i64(coeffs: &[i64], init: &[i64]) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| rat(c)).collect(),
            0,
            init.iter().map(|&v| rat(v)).collect(),
        )
    }

    /// `init * ratio^n`.
    pub fn geometric(ratio: Rational, init: Rational) -> Self {
        Self::new(vec![ratio], 1, vec![init]).expect("order one")
    }

    pub fn zero() -> Self {
        Self {
            coeffs: Vec::new(),
            valid_from: 0,
            prefix: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    fn next_from(&self, window: &[Rational]) -> Rational {
        let n = window.len();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * &window[n - 1 - i])
            .sum()
    }

    /// Exact `n`-th term.
    pub fn term(&self, n: usize) -> Rational {
        if n < self.valid_from {
            return self.prefix[n].clone();
        }
        let r = self.order();
        if r == 0 {
            return Rational::zero();
        }
        let mut window: Vec<Rational> = self.prefix[self.valid_from - r..].to_vec();
        for _ in self.valid_from..=n {
            let next = self.next_from(&window);
            window.remove(0);
            window.push(next);
        }
        window.pop().expect("order >= 1")
    }

    /// Terms `x_0 .. x_{n-1}`.
    pub fn terms(&self, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.prefix.iter().take(n).cloned().collect();
        while out.len() < n {
            if self.order() == 0 {
                out.push(Rational::zero());
            } else {
                let next = self.next_from(&out);
                out.push(next);
            }
        }
        out
    }

    /// `1 - c_1 t - .. - c_r t^r`.
    pub fn denominator(&self) -> UniPoly {
        let mut v = vec![rat(1)];
        v.extend(self.coeffs.iter().map(|c| -c));
        UniPoly::new(v)
    }

    /// Monic characteristic polynomial `x^r - c_1 x^{r-1} - .. - c_r`,
    /// lowest degree first.
    pub fn char_poly(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.coeffs.iter().rev().map(|c| -c).collect();
        v.push(rat(1));
        v
    }

    /// Builds a sequence from a recurrence denominator `q` (with `q(0) = 1`)
    /// and a term oracle, then confirms the recurrence on `extra` further
    /// terms.
    fn certified(q: &UniPoly, valid_from: usize, extra: usize, source: impl Fn(usize) -> Rational) -> Self {
        let coeffs: Vec<Rational> = q.coeffs().iter().skip(1).map(|c| -c).collect();
        let valid_from = valid_from.max(coeffs.len());
        let prefix: Vec<Rational> = (0..valid_from).map(&source).collect();
        let seq = Self {
            coeffs,
            valid_from,
            prefix,
        };
        let check = seq.terms(valid_from + extra);
        for (n, v) in check.iter().enumerate().skip(valid_from) {
            assert_eq!(*v, source(n), "constructed recurrence disagrees with termwise value at {n}");
        }
        seq
    }

    /// Termwise sum.
    pub fn add(&self, other: &Self) -> Self {
        Self::from_hilbert(&self.hilbert_series().add(&other.hilbert_series()))
            .expect("unit constant term")
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.clone(),
            valid_from: self.valid_from,
            prefix: self.prefix.iter().map(|v| v * k).collect(),
        }
        .minimized()
    }

    /// Termwise product. The recurrence comes from the characteristic
    /// polynomial of the Kronecker product of the companion matrices.
    pub fn hadamard(&self, other: &Self) -> Self {
        let ka = companion(&self.coeffs);
        let kb = companion(&other.coeffs);
        let cp = ka.kron(&kb).char_poly().expect("square");
        let rec = recurrence_from_char_poly(&cp);
        let order = rec.len();
        let mut q = vec![rat(1)];
        q.extend(rec.iter().map(|c| -c));
        let valid_from = self.valid_from.max(other.valid_from) + order;
        let extra = 4 * order.max(1);
        let n = valid_from + extra;
        let (ta, tb) = (self.terms(n), other.terms(n));
        Self::certified(&UniPoly::new(q), valid_from, extra, |i| &ta[i] * &tb[i]).minimized()
    }

    /// `b_n = a_0 + .. + a_n`; the generating function gains a factor
    /// `1 / (1 - t)`.
    pub fn partial_sums(&self) -> Self {
        let h = self.hilbert_series();
        let den = h.denominator() * &UniPoly::from_i64s(&[1, -1]);
        Self::from_hilbert(&HilbertSeries::new(h.numerator().clone(), den).expect("unit constant"))
            .expect("unit constant term")
    }

    /// `b_n = a_{d n}`, using the characteristic polynomial of the `d`-th
    /// power of the companion matrix.
    pub fn dilate(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dilation factor must be at least 1".into()));
        }
        let c = companion(&self.coeffs);
        let cp = c.pow(d as u64)?.char_poly()?;
        let rec = recurrence_from_char_poly(&cp);
        let r = rec.len();
        let mut q = vec![rat(1)];
        q.extend(rec.iter().map(|c| -c));
        let n0 = self.valid_from.div_ceil(d);
        let valid_from = n0 + r;
        let extra = 4 * r.max(1);
        let n = valid_from + extra;
        let ta = self.terms(d * n);
        Ok(Self::certified(&UniPoly::new(q), valid_from, extra, |i| ta[d * i].clone()).minimized())
    }

    /// `b_n = a_{n+k}`; same recurrence, earlier threshold.
    pub fn shift(&self, k: usize) -> Self {
        let valid_from = self.valid_from.saturating_sub(k).max(self.order());
        let prefix = (0..valid_from).map(|n| self.term(n + k)).collect();
        Self {
            coeffs: self.coeffs.clone(),
            valid_from,
            prefix,
        }
    }

    /// Reduced generating function `sum_n x_n t^n`.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let q = self.denominator();
        let a = UniPoly::new(self.prefix.clone());
        let p = (&q * &a).truncate(self.valid_from);
        HilbertSeries::new(p, q).expect("denominator constant term is 1")
    }

    /// Sequence of a rational generating function; the recurrence is the
    /// (reduced) denominator.
    pub fn from_hilbert(h: &HilbertSeries) -> Result<Self> {
        let h = HilbertSeries::new(h.num.clone(), h.den.clone())?;
        let coeffs: Vec<Rational> = h.den.coeffs().iter().skip(1).map(|c| -c).collect();
        let r = coeffs.len();
        let valid_from = match h.num.degree() {
            Some(p) => r.max(p + 1),
            None => r,
        };
        let prefix = h.expand(valid_from);
        Ok(Self {
            coeffs,
            valid_from,
            prefix,
        })
    }

    /// Minimal recurrence and threshold describing the same sequence.
    pub fn minimized(&self) -> Self {
        Self::from_hilbert(&self.hilbert_series()).expect("unit constant term")
    }

    /// True when the first `n` terms coincide.
    pub fn agrees_with(&self, other: &Self, n: usize) -> bool {
        self.terms(n) == other.terms(n)
    }

    /// Parses `rec: c1,c2,...; from: k; prefix: v0,v1,...`. A missing
    /// `from` means the recurrence holds from the order onward.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rec = None;
        let mut from = None;
        let mut prefix = None;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once(':').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected `key: value`, got `{part}`"),
            })?;
            match key.trim() {
                "rec" => rec = Some(parse_rational_list(val)?),
                "from" => {
                    from = Some(val.trim().parse::<usize>().map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("invalid threshold `{}`", val.trim()),
                    })?)
                }
                "prefix" => prefix = Some(parse_rational_list(val)?),
                other => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let rec = rec.unwrap_or_default();
        let prefix = prefix.unwrap_or_default();
        Self::new(rec, from.unwrap_or(0), prefix)
    }
}

impl FromStr for CFiniteSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for CFiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "rec: {}; from: {}; prefix: {}",
            join(&self.coeffs),
            self.valid_from,
            join(&self.prefix)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> CFiniteSeq {
        CFiniteSeq::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn naturals() -> CFiniteSeq {
        CFiniteSeq::from_i64(&[2, -1], &[0, 1]).unwrap()
    }

    #[test]
    fn term_examples() {
        let g = CFiniteSeq::geometric(rat(2), rat(1));
        assert_eq!(g.term(10), rat(1024));
        assert_eq!(fib().term(10), rat(55));
        let s = CFiniteSeq::from_i64(&[0, 5, 0, -6, 0, 1], &[1, 2, 3, 6, 10, 19]).unwrap();
        assert_eq!(s.term(12), rat(1145));
        assert_eq!(s.terms(14), ints(&[1, 2, 3, 6, 10, 19, 33, 61, 108, 197, 352, 638, 1145, 2069]));
    }

    #[test]
    fn add_examples() {
        let a = fib();
        assert!(a.add(&CFiniteSeq::zero()).agrees_with(&a, 30));
        let two = CFiniteSeq::geometric(rat(2), rat(1));
        let three = CFiniteSeq::geometric(rat(3), rat(1));
        let s = two.add(&three);
        assert_eq!(s.coeffs(), &ints(&[5, -6])[..]);
        let ff = fib().add(&fib());
        assert_eq!(ff.order(), 2);
        assert_eq!(ff.term(10), rat(110));
    }

    #[test]
    fn hadamard_examples() {
        let two = CFiniteSeq::geometric(rat(2), rat(1));
        let three = CFiniteSeq::geometric(rat(3), rat(1));
        let six = two.hadamard(&three);
        assert_eq!(six.coeffs(), &ints(&[6])[..]);
        assert_eq!(six.term(5), rat(7776));
        let sq = naturals().hadamard(&naturals());
        assert_eq!(sq.coeffs(), &ints(&[3, -3, 1])[..]);
        assert_eq!(sq.terms(10), (0..10).map(|n| rat(n * n)).collect::<Vec<_>>());
        let ff = fib().hadamard(&fib());
        assert!(ff.order() <= 4);
        assert_eq!(ff.term(10), rat(3025));
    }

    #[test]
    fn partial_sum_examples() {
        let ones = CFiniteSeq::from_i64(&[1], &[1]).unwrap();
        assert_eq!(ones.partial_sums().terms(8), (1..=8).map(rat).collect::<Vec<_>>());
        let two = CFiniteSeq::geometric(rat(2), rat(1));
        assert_eq!(
            two.partial_sums().terms(10),
            (0..10).map(|n| rat((1 << (n + 1)) - 1)).collect::<Vec<_>>()
        );
        let fs = fib().partial_sums();
        let f = fib().terms(12);
        for n in 0..10 {
            assert_eq!(fs.term(n), &f[n + 2] - rat(1));
        }
    }

    #[test]
    fn dilate_examples() {
        let two = CFiniteSeq::geometric(rat(2), rat(1));
        let e = two.dilate(3).unwrap();
        assert_eq!(e.coeffs(), &ints(&[8])[..]);
        let f2 = fib().dilate(2).unwrap();
        assert_eq!(f2.coeffs(), &ints(&[3, -1])[..]);
        assert_eq!(f2.terms(5), ints(&[0, 1, 3, 8, 21]));
        assert!(fib().dilate(1).unwrap().agrees_with(&fib(), 40));
        assert!(fib().dilate(0).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(fib().shift(0), fib());
        assert_eq!(fib().shift(1).terms(5), ints(&[1, 1, 2, 3, 5]));
        let c = CFiniteSeq::new(
            ints(&[0, 5, 0, -6, 0, 1]),
            6,
            ints(&[2, 4, 8, 16, 32, 57]),
        )
        .unwrap();
        assert_eq!(c.shift(2).terms(3), ints(&[8, 16, 32]));
    }

    #[test]
    fn hilbert_examples() {
        let ones = CFiniteSeq::from_i64(&[1], &[1]).unwrap();
        let h = ones.hilbert_series();
        assert_eq!(h.numerator(), &UniPoly::one());
        assert_eq!(h.denominator(), &UniPoly::from_i64s(&[1, -1]));
        let h2 = CFiniteSeq::geometric(rat(2), rat(1)).hilbert_series();
        assert_eq!(h2.denominator(), &UniPoly::from_i64s(&[1, -2]));
        let hf = fib().hilbert_series();
        assert_eq!(hf.numerator(), &UniPoly::from_i64s(&[0, 1]));
        assert_eq!(hf.denominator(), &UniPoly::from_i64s(&[1, -1, -1]));
        assert_eq!(hf.expand(10), fib().terms(10));
    }

    #[test]
    fn from_hilbert_examples() {
        let h = HilbertSeries::parse("1 / (1 - t)").unwrap();
        assert_eq!(CFiniteSeq::from_hilbert(&h).unwrap().terms(5), ints(&[1; 5]));
        let h = HilbertSeries::parse("t / (1 - t - t^2)").unwrap();
        assert!(CFiniteSeq::from_hilbert(&h).unwrap().agrees_with(&fib(), 30));
        let h = HilbertSeries::parse("(1 + t) / (1 - t)^2").unwrap();
        assert_eq!(
            CFiniteSeq::from_hilbert(&h).unwrap().terms(6),
            ints(&[1, 3, 5, 7, 9, 11])
        );
        assert_eq!(
            HilbertSeries::new(UniPoly::one(), UniPoly::x()).unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn exception_prefix_is_kept() {
        // 7, 1, 2, 4, 8, ...: doubling from index 2 on.
        let s = CFiniteSeq::new(ints(&[2]), 2, ints(&[7, 1])).unwrap();
        assert_eq!(s.terms(5), ints(&[7, 1, 2, 4, 8]));
        let m = s.minimized();
        assert!(m.agrees_with(&s, 30));
        assert_eq!(m.valid_from(), 2);
    }

    #[test]
    fn text_form() {
        let s = CFiniteSeq::parse("rec: 1,1; from: 2; prefix: 0,1").unwrap();
        assert_eq!(s, fib());
        assert_eq!(CFiniteSeq::parse(&s.to_string()).unwrap(), s);
        let t = CFiniteSeq::parse("rec: 1/2; prefix: 4, 2, 1").unwrap();
        assert_eq!(t.term(3), super::super::ring::ratio(1, 2));
        assert!(CFiniteSeq::parse("rec: 1; prefix: 1, 2").is_err());
        assert!(CFiniteSeq::parse("rec 1").is_err());
    }
}
