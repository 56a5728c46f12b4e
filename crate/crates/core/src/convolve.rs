//! Substituting sequences into polynomial sequences: `P_n |> a` replaces
//! each monomial `x^k` of `P_n` by `a_k` (and, in the Laurent form,
//! `x^{-k-1}` by `b_k`). Polynomial sequences are given by a linear
//! recurrence with polynomial coefficients in `x`.

use std::fmt::Debug;

use num_traits::Zero;

use crate::cfinite::CFiniteSeq;
use crate::error::{Error, Result};
use crate::guess::{guess_algebraic, guess_cfinite, guess_precursive, GuessReport};
use crate::ring::{LaurentPoly, MultiPoly, Rational, Ring};

/// Ring elements with a notion of lowest and highest (total) degree.
pub trait Graded: Ring {
    fn degree_range(&self) -> Option<(i64, i64)>;
}

impl Graded for LaurentPoly {
    fn degree_range(&self) -> Option<(i64, i64)> {
        Some((self.min_exp()?, self.max_exp()?))
    }
}

impl Graded for MultiPoly {
    fn degree_range(&self) -> Option<(i64, i64)> {
        self.total_degree_range()
    }
}

/// `P_{n+T} = c_0 P_n + c_1 P_{n+1} + .. + c_{T-1} P_{n+T-1}` for
/// `n >= from`, with `P_0 .. P_{from+T-1}` given.
#[derive(Clone, PartialEq, Debug)]
pub struct PolySeqRec<P> {
    coeffs: Vec<P>,
    init: Vec<P>,
    from: usize,
}

/// Linear bounds `lo_a + lo_d n <= deg P_n <= hi_a + hi_d n` valid for
/// `n >= from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Envelope {
    lo_a: i64,
    lo_d: i64,
    hi_a: i64,
    hi_d: i64,
}

impl<P: Graded> PolySeqRec<P> {
    pub fn new(coeffs: Vec<P>, init: Vec<P>, from: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if init.len() != from + coeffs.len() {
            return Err(Error::SizeMismatch(format!(
                "need {} initial polynomials, got {}",
                from + coeffs.len(),
                init.len()
            )));
        }
        Ok(Self { coeffs, init, from })
    }

    /// `P_n = base^n`.
    pub fn powers(base: P) -> Self {
        Self {
            coeffs: vec![base],
            init: vec![P::one()],
            from: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[P] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[P] {
        &self.init
    }

    pub fn threshold(&self) -> usize {
        self.from
    }

    fn envelope(&self) -> Envelope {
        let t = self.order() as i64;
        let (mut lo_d, mut hi_d) = (i64::MAX, 0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some((lo, hi)) = c.degree_range() {
                let span = t - i as i64;
                lo_d = lo_d.min(lo.div_euclid(span));
                hi_d = hi_d.max((hi + span - 1).div_euclid(span));
            }
        }
        if lo_d == i64::MAX {
            lo_d = 0;
        }
        let (mut lo_a, mut hi_a) = (i64::MAX, i64::MIN);
        for (j, p) in self.init.iter().enumerate().skip(self.from) {
            if let Some((lo, hi)) = p.degree_range() {
                lo_a = lo_a.min(lo - lo_d * j as i64);
                hi_a = hi_a.max(hi - hi_d * j as i64);
            }
        }
        Envelope {
            lo_a,
            lo_d,
            hi_a,
            hi_d,
        }
    }

    /// `P_0 .. P_{count-1}`.
    pub fn terms(&self, count: usize) -> Result<Vec<P>> {
        let env = self.envelope();
        let t = self.order();
        let mut out: Vec<P> = self.init.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len() - t;
            let mut next = P::zero();
            for (i, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() && !out[n + i].is_zero() {
                    next = next.plus(&c.times(&out[n + i]));
                }
            }
            if let Some((lo, hi)) = next.degree_range() {
                let m = out.len() as i64;
                if lo < env.lo_a + env.lo_d * m || hi > env.hi_a + env.hi_d * m {
                    return Err(Error::Integrity(format!(
                        "term {m} has degrees {lo}..{hi} outside the linear envelope"
                    )));
                }
            }
            out.push(next);
        }
        Ok(out)
    }

    pub fn term(&self, n: usize) -> Result<P> {
        Ok(self.terms(n + 1)?.pop().expect("n + 1 terms"))
    }
}

impl PolySeqRec<LaurentPoly> {
    /// Text form, one `key: value` per line (`#` starts a comment):
    /// `coeffs: c_0; c_1; ...`, `init: P_0; P_1; ...`, optional `from: k`
    /// and `var: x` (the symbol, default `x`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut coeffs = None;
        let mut init = None;
        let mut from = 0;
        let mut var = "x".to_string();
        let mut pending = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| Error::Scenario {
                line: ln + 1,
                msg: format!("expected `key: value`, got `{line}`"),
            })?;
            match k.trim() {
                "var" => var = v.trim().to_string(),
                "from" => {
                    from = v.trim().parse().map_err(|_| Error::Scenario {
                        line: ln + 1,
                        msg: format!("invalid threshold `{}`", v.trim()),
                    })?
                }
                "coeffs" => coeffs = Some((ln + 1, v.to_string())),
                "init" => init = Some((ln + 1, v.to_string())),
                other => pending.push((ln + 1, other.to_string())),
            }
        }
        if let Some((line, key)) = pending.into_iter().next() {
            return Err(Error::Scenario {
                line,
                msg: format!("unknown key `{key}`"),
            });
        }
        let list = |entry: Option<(usize, String)>, what: &str| -> Result<Vec<LaurentPoly>> {
            let (line, v) = entry.ok_or_else(|| Error::Scenario {
                line: 0,
                msg: format!("missing `{what}`"),
            })?;
            v.split(';')
                .map(|p| {
                    LaurentPoly::parse_with_symbol(p.trim(), &var).map_err(|e| Error::Scenario {
                        line,
                        msg: e.to_string(),
                    })
                })
                .collect()
        };
        Self::new(list(coeffs, "coeffs")?, list(init, "init")?, from)
    }
}

/// `b_n = sum_k [x^k] P_n * a_k` for `n < count`; every `P_n` must be an
/// ordinary polynomial.
pub fn tri_plain(ps: &PolySeqRec<LaurentPoly>, a: &CFiniteSeq, count: usize) -> Result<Vec<Rational>> {
    let polys = ps.terms(count)?;
    let top = polys.iter().filter_map(LaurentPoly::max_exp).max().unwrap_or(0);
    let ta = a.terms(top.max(0) as usize + 1);
    polys
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let mut acc = Rational::zero();
            for (k, c) in p.terms() {
                if k < 0 {
                    return Err(Error::NotOrdinaryPolynomial { index: n, exponent: k });
                }
                acc += c * &ta[k as usize];
            }
            Ok(acc)
        })
        .collect()
}

/// `c_n = sum_{k>=0} [x^k] P_n * a_k + sum_{k<0} [x^k] P_n * b_{-k-1}`.
pub fn tri_laurent(
    ps: &PolySeqRec<LaurentPoly>,
    a: &CFiniteSeq,
    b: &CFiniteSeq,
    count: usize,
) -> Result<Vec<Rational>> {
    let polys = ps.terms(count)?;
    let top = polys.iter().filter_map(LaurentPoly::max_exp).max().unwrap_or(0);
    let bottom = polys.iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0);
    let ta = a.terms(top.max(0) as usize + 1);
    let tb = b.terms((-bottom).max(0) as usize);
    Ok(polys
        .iter()
        .map(|p| {
            p.terms()
                .map(|(k, c)| {
                    if k >= 0 {
                        c * &ta[k as usize]
                    } else {
                        c * &tb[(-k - 1) as usize]
                    }
                })
                .sum()
        })
        .collect())
}

/// Largest number of monomials allowed in a single multi-variable term.
pub const MULTI_TERM_CAP: usize = 1 << 20;

/// `sum_s [x^s] P_n * a(s)` over monomials `x_1^{s_1} .. x_l^{s_l}`,
/// `l <= 3`. Exponent vectors passed to `a` always have length `l`, the
/// largest number of variables used by any term.
pub fn tri_multi(
    ps: &PolySeqRec<MultiPoly>,
    a: impl Fn(&[i64]) -> Rational,
    count: usize,
) -> Result<Vec<Rational>> {
    let polys = ps.terms(count)?;
    let arity = polys.iter().map(MultiPoly::nvars).max().unwrap_or(0);
    polys
        .iter()
        .enumerate()
        .map(|(n, p)| {
            if p.nvars() > 3 {
                return Err(Error::Unsupported(format!(
                    "term {n} uses {} variables; at most 3 are supported",
                    p.nvars()
                )));
            }
            if p.len() > MULTI_TERM_CAP {
                return Err(Error::Budget(format!(
                    "term {n} has {} monomials, cap is {MULTI_TERM_CAP}",
                    p.len()
                )));
            }
            let mut acc = Rational::zero();
            for (e, c) in p.terms() {
                if let Some(&k) = e.iter().find(|&&k| k < 0) {
                    return Err(Error::NotOrdinaryPolynomial { index: n, exponent: k });
                }
                let mut padded = e.to_vec();
                padded.resize(arity, 0);
                acc += c * a(&padded);
            }
            Ok(acc)
        })
        .collect()
}

/// Which guesser to run, with its search bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuessRequest {
    CFinite { max_order: usize, max_offset: usize },
    Algebraic { deg_t: usize, deg_y: usize, margin: usize },
    PRecursive { max_order: usize, max_poldeg: usize },
}

impl GuessRequest {
    pub fn run(&self, terms: &[Rational]) -> Result<GuessReport> {
        match *self {
            GuessRequest::CFinite { max_order, max_offset } => guess_cfinite(terms, max_order, max_offset),
            GuessRequest::Algebraic { deg_t, deg_y, margin } => guess_algebraic(terms, deg_t, deg_y, margin),
            GuessRequest::PRecursive { max_order, max_poldeg } => {
                guess_precursive(terms, max_order, max_poldeg)
            }
        }
    }
}

/// The three substitution forms, for [`tri_then_guess`].
pub enum TriInput<'a> {
    Plain(&'a PolySeqRec<LaurentPoly>, &'a CFiniteSeq),
    Laurent(&'a PolySeqRec<LaurentPoly>, &'a CFiniteSeq, &'a CFiniteSeq),
    Multi(&'a PolySeqRec<MultiPoly>, &'a dyn Fn(&[i64]) -> Rational),
}

impl TriInput<'_> {
    pub fn terms(&self, count: usize) -> Result<Vec<Rational>> {
        match self {
            TriInput::Plain(ps, a) => tri_plain(ps, a, count),
            TriInput::Laurent(ps, a, b) => tri_laurent(ps, a, b, count),
            TriInput::Multi(ps, a) => tri_multi(ps, a, count),
        }
    }
}

/// Computes `count` terms of the substitution and runs the requested
/// guesser on them.
pub fn tri_then_guess(input: &TriInput<'_>, count: usize, request: GuessRequest) -> Result<GuessReport> {
    request.run(&input.terms(count)?)
}
