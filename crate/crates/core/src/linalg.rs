//! Dense linear algebra over exact rings.
//!
//! [`Matrix`] is generic over [`Ring`] so the same characteristic
//! polynomial and power routines serve rational companion matrices and the
//! Laurent matrices of tensor systems. [`kernel`] computes exact rational
//! null spaces with a modular rank filter in front of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{common_denominator, Rational, Ring};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch("matrix addition".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|a| a.times(k))
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    /// Binary exponentiation; `pow(0)` is the identity.
    pub fn pow(&self, mut n: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.rows {
            return Err(Error::SizeMismatch(format!(
                "row of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![R::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *slot = slot.plus(&vi.times(a));
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a.times(other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
    /// recurrence; coefficients of `x^0 .. x^n`, monic. Only exact division
    /// by the integers `1..=n` is needed.
    pub fn char_poly(&self) -> Result<Vec<R>> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = R::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m)?;
            for i in 0..n {
                let idx = i * n + i;
                next.data[idx] = next.data[idx].plus(&coeffs[n - k + 1]);
            }
            m = next;
            let am = self.mul(&m)?;
            coeffs[n - k] = am.trace().negated().div_i64(k as i64);
        }
        Ok(coeffs)
    }

    /// `sum_k coeffs[k] * A^k` by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[R]) -> Result<Self> {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = acc.data[idx].plus(c);
            }
        }
        Ok(acc)
    }
}

/// Companion matrix of `x_n = sum_i c_i x_{n-i}` acting on column state
/// vectors `(x_{n-r}, .., x_{n-1})`.
pub fn companion(coeffs: &[Rational]) -> Matrix<Rational> {
    let r = coeffs.len();
    let mut m = Matrix::zeros(r, r);
    for i in 0..r.saturating_sub(1) {
        m.set(i, i + 1, Rational::one());
    }
    for (i, c) in coeffs.iter().enumerate() {
        // x_n depends on x_{n-1-i}, which sits at state index r-1-i.
        if r > 0 {
            m.set(r - 1, r - 1 - i, c.clone());
        }
    }
    m
}

/// Recurrence coefficients `c_1..c_r` read off a monic characteristic
/// polynomial given lowest degree first.
pub fn recurrence_from_char_poly(cp: &[Rational]) -> Vec<Rational> {
    let r = cp.len() - 1;
    (1..=r).map(|i| -cp[r - i].clone()).collect()
}

const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn reduce_mod(v: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    v.mod_floor(&m).to_u64().expect("reduced value fits")
}

/// Clears denominators row by row.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let d = common_denominator(row.iter());
            row.iter()
                .map(|v| (v * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Rank modulo a 61-bit prime; a lower bound for the rank over `Q`.
fn modular_rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(reduce_mod).collect())
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = powmod(m[rank][c], MODULUS - 2);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = mulmod(row[c], inv);
            for (x, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = (*x + MODULUS - mulmod(f, pv)) % MODULUS;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Basis of the right null space `{x : A x = 0}` of the rational matrix
/// with the given rows and `ncols` columns.
///
/// The basis is canonical: one vector per free column (in increasing
/// column order), with a 1 in that column and 0 in the other free columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = integer_rows(rows);
    if !m.is_empty() && modular_rank(&m, ncols) == ncols {
        return Vec::new();
    }
    for row in m.iter_mut() {
        make_primitive(row);
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs())
        else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = prow[c].clone();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                row[j] = &row[j] * &pv - &f * &prow[j];
            }
            make_primitive(row);
        }
        pivots.push(c);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for j in pc + 1..ncols {
                    if !m[r][j].is_zero() && !x[j].is_zero() {
                        acc += Rational::from_integer(m[r][j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / Rational::from_integer(m[r][pc].clone());
            }
            x
        })
        .collect()
}

/// Solves `A x = b`; returns one solution (free variables set to zero) or
/// `None` when the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(-b.clone());
            v
        })
        .collect();
    // Solutions correspond to kernel vectors of [A | -b] with last entry 1.
    let ker = kernel(&aug, ncols + 1);
    // The canonical basis has at most one vector with a 1 in the last
    // column when that column is free.
    ker.into_iter()
        .find(|v| v[ncols].is_one())
        .map(|mut v| {
            v.truncate(ncols);
            v
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let rows = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[1, 0, 1])];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            let dot: Rational = r.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(kernel(&[q(&[1, 0]), q(&[0, 1])], 2).is_empty());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let rows = vec![q(&[1, 1]), q(&[1, -1])];
        assert_eq!(solve(&rows, &q(&[3, 1])), Some(q(&[2, 1])));
        let rows = vec![q(&[1, 1]), q(&[2, 2])];
        assert_eq!(solve(&rows, &q(&[1, 3])), None);
    }

    #[test]
    fn char_poly_of_companion() {
        // x_n = x_{n-1} + x_{n-2}: char poly x^2 - x - 1.
        let c = companion(&q(&[1, 1]));
        assert_eq!(c.char_poly().unwrap(), q(&[-1, -1, 1]));
        assert_eq!(recurrence_from_char_poly(&q(&[-1, -1, 1])), q(&[1, 1]));
        let z = c.eval_poly(&q(&[-1, -1, 1])).unwrap();
        assert!(z.is_zero());
    }
}
