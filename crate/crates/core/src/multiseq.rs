//! Two-variable sequences: rational generating functions in `t1, t2`,
//! sequences with a linear recurrence along each axis, Hadamard products,
//! diagonals, row sums and matrix products.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::cfinite::{CFiniteSeq, HilbertSeries};
use crate::error::{Error, Result};
use crate::linalg::{companion, recurrence_from_char_poly};
use crate::ring::{rat, BiPoly, Rational, UniPoly};

/// Largest block side expanded by default.
pub const DEFAULT_BLOCK_CAP: usize = 256;

/// Anything that can produce a finite block `a_{m,n}`, `m < rows`,
/// `n < cols`.
pub trait BiSequence {
    fn block(&self, rows: usize, cols: usize) -> Result<Vec<Vec<Rational>>>;

    /// Whether row `m` vanishes at every index past `bound`. The default
    /// inspects a window of further terms; recurrence-backed sequences can
    /// certify it.
    fn row_vanishes_after(&self, m: usize, bound: usize) -> Result<bool> {
        let cols = bound + 1 + 16;
        let b = self.block(m + 1, cols)?;
        Ok(b[m][bound + 1..].iter().all(Zero::is_zero))
    }
}

fn check_cap(rows: usize, cols: usize) -> Result<()> {
    if rows.max(cols) > DEFAULT_BLOCK_CAP {
        return Err(Error::Budget(format!(
            "block {rows}x{cols} exceeds the cap of {DEFAULT_BLOCK_CAP}"
        )));
    }
    Ok(())
}

/// Reduced `P(t1, t2) / Q(t1, t2)` with `Q(0, 0) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatBiSeries {
    num: BiPoly,
    den: BiPoly,
}

impl RatBiSeries {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        let c = den.coeff(0, 0);
        if c.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: BiPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let k = den.coeff(0, 0).recip();
        Ok(Self {
            num: num.scale(&k),
            den: den.scale(&k),
        })
    }

    /// Parses `(P) / (Q)` over `t1, t2`.
    pub fn parse(text: &str) -> Result<Self> {
        let (n, d) = crate::ring::text::parse_fraction(text, &["t1", "t2"])?;
        Self::new(BiPoly::from_multi(&n)?, BiPoly::from_multi(&d)?)
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    /// Coefficients of `t1^m t2^n` for `m < rows`, `n < cols`.
    pub fn expand(&self, rows: usize, cols: usize) -> Result<Vec<Vec<Rational>>> {
        check_cap(rows, cols)?;
        let q: Vec<((usize, usize), Rational)> = self
            .den
            .terms()
            .filter(|(k, _)| *k != (0, 0))
            .map(|((i, j), c)| ((i as usize, j as usize), c.clone()))
            .collect();
        let mut a = vec![vec![Rational::zero(); cols]; rows];
        for m in 0..rows {
            for n in 0..cols {
                let mut v = self.num.coeff(m as u32, n as u32);
                for ((i, j), c) in &q {
                    if *i <= m && *j <= n {
                        let prev = &a[m - i][n - j];
                        if !prev.is_zero() {
                            v -= c * prev;
                        }
                    }
                }
                a[m][n] = v;
            }
        }
        Ok(a)
    }

    pub fn coeff(&self, m: usize, n: usize) -> Result<Rational> {
        Ok(self.expand(m + 1, n + 1)?[m][n].clone())
    }

    /// `h(t, 1)` (axis 1) or `h(1, t)` (axis 0), reduced. Requires the
    /// substituted denominator to have a nonzero constant term.
    pub fn substitute_one(&self, axis: usize) -> Result<HilbertSeries> {
        let one = Rational::one();
        let den = self.den.substitute(axis, &one);
        if den.coeff(0).is_zero() {
            return Err(Error::SingularSubstitution(format!(
                "denominator {} has no constant term",
                den.to_text("t")
            )));
        }
        HilbertSeries::new(self.num.substitute(axis, &one), den)
    }

    /// First `n` diagonal coefficients `a_{k,k}`.
    pub fn diagonal(&self, n: usize) -> Result<Vec<Rational>> {
        let b = self.expand(n, n)?;
        Ok((0..n).map(|k| b[k][k].clone()).collect())
    }
}

impl BiSequence for RatBiSeries {
    fn block(&self, rows: usize, cols: usize) -> Result<Vec<Vec<Rational>>> {
        self.expand(rows, cols)
    }
}

impl FromStr for RatBiSeries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for RatBiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num.to_text(), self.den.to_text())
    }
}

/// Two-variable sequence with a constant-coefficient recurrence along each
/// axis: `a_{m,n} = sum_i rec1[i-1] a_{m-i,n}` for `m >= from1`, and
/// `a_{m,n} = sum_j rec2[j-1] a_{m,n-j}` for `n >= from2`. The block
/// `m < from1, n < from2` determines everything.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CFinite2Seq {
    rec1: Vec<Rational>,
    from1: usize,
    rec2: Vec<Rational>,
    from2: usize,
    init: Vec<Vec<Rational>>,
}

impl CFinite2Seq {
    /// `block` must cover at least `from1 x from2`; any further entries are
    /// checked against the recurrences.
    pub fn new(
        rec1: Vec<Rational>,
        from1: usize,
        rec2: Vec<Rational>,
        from2: usize,
        block: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let from1 = from1.max(rec1.len());
        let from2 = from2.max(rec2.len());
        if block.len() < from1 || block.iter().take(from1).any(|r| r.len() < from2) {
            return Err(Error::InvalidArgument(format!(
                "initial block must cover {from1}x{from2}"
            )));
        }
        let init = block[..from1].iter().map(|r| r[..from2].to_vec()).collect();
        let seq = Self {
            rec1,
            from1,
            rec2,
            from2,
            init,
        };
        let cols = block.iter().map(Vec::len).max().unwrap_or(0);
        let full = seq.block(block.len(), cols)?;
        for (m, row) in block.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                if full[m][n] != *v {
                    return Err(Error::Integrity(format!(
                        "block entry ({m},{n}) contradicts the axis recurrences"
                    )));
                }
            }
        }
        Ok(seq)
    }

    /// Builds the initial block from a term function.
    pub fn from_fn(
        rec1: Vec<Rational>,
        from1: usize,
        rec2: Vec<Rational>,
        from2: usize,
        f: impl Fn(usize, usize) -> Rational,
    ) -> Result<Self> {
        let (k1, k2) = (from1.max(rec1.len()), from2.max(rec2.len()));
        let block = (0..k1).map(|m| (0..k2).map(|n| f(m, n)).collect()).collect();
        Self::new(rec1, k1, rec2, k2, block)
    }

    /// `a_{m,n} = x_m y_n`.
    pub fn outer(x: &CFiniteSeq, y: &CFiniteSeq) -> Self {
        let (k1, k2) = (x.valid_from(), y.valid_from());
        let (tx, ty) = (x.terms(k1), y.terms(k2));
        Self {
            rec1: x.coeffs().to_vec(),
            from1: k1,
            rec2: y.coeffs().to_vec(),
            from2: k2,
            init: tx.iter().map(|a| ty.iter().map(|b| a * b).collect()).collect(),
        }
    }

    pub fn axis_recurrence(&self, axis: usize) -> (&[Rational], usize) {
        if axis == 0 {
            (&self.rec1, self.from1)
        } else {
            (&self.rec2, self.from2)
        }
    }

    fn row_seq(&self, m: usize) -> CFiniteSeq {
        CFiniteSeq::new(self.rec2.clone(), self.from2, self.init[m].clone())
            .expect("row prefix covers the threshold")
    }

    pub fn term(&self, m: usize, n: usize) -> Rational {
        self.block(m + 1, n + 1).expect("uncapped")[m][n].clone()
    }

    /// Reduced rational generating function `P / (Q1(t1) Q2(t2))`,
    /// checked against a 20x20 block.
    pub fn to_rational(&self) -> Result<RatBiSeries> {
        let q1 = axis_denominator(&self.rec1);
        let q2 = axis_denominator(&self.rec2);
        let (k1, k2) = (self.from1, self.from2);
        let mut p = Vec::new();
        for m in 0..k1 {
            for n in 0..k2 {
                let mut v = Rational::zero();
                for i in 0..=m.min(self.rec1.len()) {
                    for j in 0..=n.min(self.rec2.len()) {
                        let c = q1.coeff(i) * q2.coeff(j);
                        if !c.is_zero() {
                            v += c * &self.init[m - i][n - j];
                        }
                    }
                }
                p.push(((m as u32, n as u32), v));
            }
        }
        let den = &BiPoly::from_uni(&q1, 0) * &BiPoly::from_uni(&q2, 1);
        let h = RatBiSeries::new(BiPoly::from_terms(p), den)?;
        if h.expand(20, 20)? != self.block(20, 20)? {
            return Err(Error::Integrity(
                "generating function disagrees with the recurrences".into(),
            ));
        }
        Ok(h)
    }

    /// Termwise product, with per-axis recurrences from Kronecker products
    /// of the companion matrices.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        let axis = |ra: &[Rational], rb: &[Rational]| -> Result<Vec<Rational>> {
            let cp = companion(ra).kron(&companion(rb)).char_poly()?;
            Ok(recurrence_from_char_poly(&cp))
        };
        let rec1 = axis(&self.rec1, &other.rec1)?;
        let rec2 = axis(&self.rec2, &other.rec2)?;
        let from1 = self.from1.max(other.from1) + rec1.len();
        let from2 = self.from2.max(other.from2) + rec2.len();
        let (rows, cols) = (from1 + 4, from2 + 4);
        let (a, b) = (self.block(rows, cols)?, other.block(rows, cols)?);
        let prod = hadamard_blocks(&a, &b);
        Self::new(rec1, from1, rec2, from2, prod)
    }
}

fn axis_denominator(rec: &[Rational]) -> UniPoly {
    let mut v = vec![rat(1)];
    v.extend(rec.iter().map(|c| -c));
    UniPoly::new(v)
}

fn hadamard_blocks(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x * y).collect())
        .collect()
}

impl BiSequence for CFinite2Seq {
    fn block(&self, rows: usize, cols: usize) -> Result<Vec<Vec<Rational>>> {
        let mut out: Vec<Vec<Rational>> = (0..rows.min(self.from1))
            .map(|m| self.row_seq(m).terms(cols))
            .collect();
        for m in self.from1..rows {
            let row = (0..cols)
                .map(|n| {
                    self.rec1
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c * &out[m - 1 - i][n])
                        .sum()
                })
                .collect();
            out.push(row);
        }
        Ok(out)
    }

    /// Certified: once the axis-2 recurrence has produced `order`
    /// consecutive zeros past the threshold, the row stays zero.
    fn row_vanishes_after(&self, m: usize, bound: usize) -> Result<bool> {
        let r = self.rec2.len();
        let start = (bound + 1).max(self.from2.saturating_sub(r));
        let b = self.block(m + 1, start + r.max(1))?;
        Ok(b[m][bound + 1..].iter().all(Zero::is_zero))
    }
}

/// Termwise product of two blocks of side `n`.
pub fn bi_hadamard(a: &dyn BiSequence, b: &dyn BiSequence, n: usize) -> Result<Vec<Vec<Rational>>> {
    check_cap(n, n)?;
    Ok(hadamard_blocks(&a.block(n, n)?, &b.block(n, n)?))
}

/// `c_m = sum_n a_{m,n} b_n` for `m < rows`, where row `m` of `a` is
/// supported on `n <= support(m)`.
pub fn matrix_product(
    a: &dyn BiSequence,
    support: impl Fn(usize) -> usize,
    b: &CFiniteSeq,
    rows: usize,
) -> Result<Vec<Rational>> {
    let bounds: Vec<usize> = (0..rows).map(&support).collect();
    let cols = bounds.iter().max().map_or(0, |m| m + 1);
    let block = a.block(rows, cols)?;
    let tb = b.terms(cols);
    let mut out = Vec::with_capacity(rows);
    for (m, &bound) in bounds.iter().enumerate() {
        if !a.row_vanishes_after(m, bound)? {
            return Err(Error::Integrity(format!(
                "row {m} has a nonzero term past its support bound {bound}"
            )));
        }
        out.push((0..=bound).map(|n| &block[m][n] * &tb[n]).sum());
    }
    Ok(out)
}

/// Sets one variable of an algebraic equation `sum_i E_i(t1, t2) y^i = 0`
/// to 1.
pub fn algebraic_substitute_one(equation: &[BiPoly], axis: usize) -> Result<Vec<UniPoly>> {
    let out: Vec<UniPoly> = equation
        .iter()
        .map(|e| e.substitute(axis, &Rational::one()))
        .collect();
    if out.iter().all(UniPoly::is_zero) {
        return Err(Error::Precondition(
            "every coefficient vanishes after substitution; the coefficients share a factor".into(),
        ));
    }
    Ok(out)
}
