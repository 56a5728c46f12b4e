//! Quasipolynomials `n -> P_{n mod T}(n)` valid from a threshold, exact
//! fitting from data, and conversion to C-finite form.

use std::fmt;
use std::str::FromStr;

use crate::cfinite::CFiniteSeq;
use crate::error::{Error, Result};
use crate::ring::{rat, Rational, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiPoly {
    polys: Vec<UniPoly>,
    start: usize,
}

impl QuasiPoly {
    /// One polynomial per residue class modulo `polys.len()`.
    pub fn new(polys: Vec<UniPoly>, start: usize) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidArgument("quasiperiod must be at least 1".into()));
        }
        Ok(Self { polys, start })
    }

    /// Eventually constant on each residue class.
    pub fn periodic(values: &[i64], start: usize) -> Result<Self> {
        Self::new(
            values.iter().map(|&v| UniPoly::constant(rat(v))).collect(),
            start,
        )
    }

    pub fn quasiperiod(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Largest degree among the constituents (0 for the zero quasipolynomial).
    pub fn degree(&self) -> usize {
        self.polys.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    /// `P_{n mod T}(n)` without the threshold check.
    pub fn extended(&self, n: usize) -> Rational {
        self.polys[n % self.polys.len()].eval(&rat(n as i64))
    }

    pub fn eval(&self, n: usize) -> Result<Rational> {
        if n < self.start {
            return Err(Error::BelowStart {
                index: n,
                start: self.start,
            });
        }
        Ok(self.extended(n))
    }

    /// C-finite form with recurrence `(1 - t^T)^{D+1}`. Indices below the
    /// start take the polynomial extension of their residue class.
    pub fn to_cfinite(&self) -> CFiniteSeq {
        let prefix: Vec<Rational> = (0..self.start).map(|n| self.extended(n)).collect();
        self.to_cfinite_with_prefix(&prefix)
            .expect("prefix has the right length")
    }

    /// As [`QuasiPoly::to_cfinite`], but the first `start` terms are taken
    /// from `prefix` (exceptional values before the threshold).
    pub fn to_cfinite_with_prefix(&self, prefix: &[Rational]) -> Result<CFiniteSeq> {
        if prefix.len() != self.start {
            return Err(Error::SizeMismatch(format!(
                "prefix has {} terms, threshold is {}",
                prefix.len(),
                self.start
            )));
        }
        let t = self.quasiperiod();
        let d = self.degree();
        let q = (&UniPoly::one() - &UniPoly::monomial(rat(1), t)).pow(d as u32 + 1);
        let coeffs: Vec<Rational> = q.coeffs().iter().skip(1).map(|c| -c).collect();
        let valid_from = self.start + coeffs.len();
        let mut terms = prefix.to_vec();
        terms.extend((self.start..valid_from + 3 * t * (d + 2)).map(|n| self.extended(n)));
        CFiniteSeq::new(coeffs, valid_from, terms)
    }

    /// Parses `quasipoly T=<int> start=<int> polys=[<poly in n>;...]`.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { pos: 0, msg };
        let rest = text
            .trim()
            .strip_prefix("quasipoly")
            .ok_or_else(|| err("expected `quasipoly`".into()))?;
        let (head, polys) = rest
            .split_once("polys=")
            .ok_or_else(|| err("missing `polys=`".into()))?;
        let mut period = None;
        let mut start = 0;
        for field in head.split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key=value`, got `{field}`")))?;
            let v: usize = v
                .parse()
                .map_err(|_| err(format!("invalid integer `{v}`")))?;
            match k {
                "T" => period = Some(v),
                "start" => start = v,
                _ => return Err(err(format!("unknown field `{k}`"))),
            }
        }
        let body = polys
            .trim()
            .strip_prefix('[')
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| err("polys must be bracketed".into()))?;
        let polys = body
            .split(';')
            .map(|p| UniPoly::parse(p, "n"))
            .collect::<Result<Vec<_>>>()?;
        if let Some(t) = period {
            if t != polys.len() {
                return Err(err(format!("T={t} but {} polynomials given", polys.len())));
            }
        }
        Self::new(polys, start)
    }
}

impl FromStr for QuasiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let polys: Vec<String> = self.polys.iter().map(|p| p.to_text("n")).collect();
        write!(
            f,
            "quasipoly T={} start={} polys=[{}]",
            self.polys.len(),
            self.start,
            polys.join(";")
        )
    }
}

/// Smallest quasipolynomial, in the order (quasiperiod, degree, threshold),
/// that matches every sample from its threshold on. `samples` holds
/// consecutive indices. Each residue class needs at least one sample beyond
/// the `d + 1` used for interpolation.
pub fn qp_fit(
    samples: &[(usize, Rational)],
    t_max: usize,
    d_max: usize,
    n0_max: usize,
) -> Result<Option<QuasiPoly>> {
    let Some(first) = samples.first().map(|s| s.0) else {
        return Ok(None);
    };
    for (i, (n, _)) in samples.iter().enumerate() {
        if *n != first + i {
            return Err(Error::InvalidArgument("sample indices must be consecutive".into()));
        }
    }
    for t in 1..=t_max {
        for d in 0..=d_max {
            for n0 in first..=first.max(n0_max) {
                let tail = &samples[n0 - first..];
                if tail.len() < t * (d + 2) {
                    break;
                }
                if let Some(q) = fit_exact(tail, t, d, n0) {
                    return Ok(Some(q));
                }
            }
        }
    }
    Ok(None)
}

fn fit_exact(tail: &[(usize, Rational)], t: usize, d: usize, n0: usize) -> Option<QuasiPoly> {
    let mut polys = Vec::with_capacity(t);
    for class in 0..t {
        let pts: Vec<(Rational, Rational)> = tail
            .iter()
            .filter(|(n, _)| n % t == class)
            .map(|(n, v)| (rat(*n as i64), v.clone()))
            .collect();
        let p = UniPoly::interpolate(&pts[..d + 1]);
        if pts[d + 1..].iter().any(|(x, y)| p.eval(x) != *y) {
            return None;
        }
        polys.push(p);
    }
    Some(QuasiPoly { polys, start: n0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(v: &[i64]) -> Vec<(usize, Rational)> {
        v.iter().enumerate().map(|(i, &x)| (i, rat(x))).collect()
    }

    #[test]
    fn eval_examples() {
        let q = QuasiPoly::parse("quasipoly T=1 start=0 polys=[n + 1]").unwrap();
        assert_eq!(q.eval(5).unwrap(), rat(6));
        let alt = QuasiPoly::periodic(&[2, 5], 0).unwrap();
        assert_eq!((0..6).map(|n| alt.eval(n).unwrap()).collect::<Vec<_>>(), samples(&[2, 5, 2, 5, 2, 5]).into_iter().map(|s| s.1).collect::<Vec<_>>());
        let late = QuasiPoly::periodic(&[1], 3).unwrap();
        assert_eq!(late.eval(2).unwrap_err(), Error::BelowStart { index: 2, start: 3 });
    }

    #[test]
    fn cfinite_examples() {
        let one = QuasiPoly::periodic(&[1], 0).unwrap().to_cfinite();
        assert_eq!(one.coeffs(), &[rat(1)][..]);
        let alt = QuasiPoly::periodic(&[2, 5], 0).unwrap().to_cfinite();
        assert_eq!(alt.coeffs(), &[rat(0), rat(1)][..]);
        let lin = QuasiPoly::parse("quasipoly T=1 start=0 polys=[n]").unwrap().to_cfinite();
        assert_eq!(lin.coeffs(), &[rat(2), rat(-1)][..]);
        let q = QuasiPoly::parse("quasipoly T=3 start=2 polys=[n^2;1 - n;7]").unwrap();
        let c = q.to_cfinite();
        for n in 2..60 {
            assert_eq!(c.term(n), q.eval(n).unwrap());
        }
    }

    #[test]
    fn fit_examples() {
        let q = qp_fit(&samples(&[1, 2, 3, 4, 5, 6]), 3, 2, 2).unwrap().unwrap();
        assert_eq!(q.to_string(), "quasipoly T=1 start=0 polys=[1 + n]");
        let q = qp_fit(&samples(&[2, 5, 2, 5, 2, 5, 2, 5, 2, 5, 2, 5]), 3, 2, 2)
            .unwrap()
            .unwrap();
        assert_eq!(q, QuasiPoly::periodic(&[2, 5], 0).unwrap());
        let noise = samples(&[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8]);
        assert_eq!(qp_fit(&noise, 3, 2, 0).unwrap(), None);
        let late = samples(&[9, 0, 1, 1, 1, 1, 1]);
        assert_eq!(qp_fit(&late, 1, 0, 3).unwrap().unwrap().start(), 2);
    }

    #[test]
    fn text_round_trip() {
        let q = QuasiPoly::parse("quasipoly T=2 start=1 polys=[2 + 3*n;5]").unwrap();
        assert_eq!(QuasiPoly::parse(&q.to_string()).unwrap(), q);
        assert!(QuasiPoly::parse("quasipoly T=3 polys=[1;2]").is_err());
    }
}
