//! Dense matrices over a prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Entries are reduced modulo `p`; rows must have equal length.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u32))
            .collect();
        Ok(Self {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        // Products are below p^2; flush the accumulator well before u64
        // overflow.
        let flush = (u64::MAX / 2) / (p * p).max(1);
        let n = other.cols;
        let mut out = Self::zeros(self.p, self.rows, n);
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending == flush {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * n + j] = (x % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + self.p - y) % self.p;
        }
        out
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Self {
        self.sub(&Self::identity(self.p, self.rows))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("square");
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.p, r, c);
        let p = self.p as u64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l) as u64;
                        if b != 0 {
                            out.data[(i * other.rows + k) * c + j * other.cols + l] = (a * b % p) as u32;
                        }
                    }
                }
            }
        }
        out
    }

    /// Rows at the given indices, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.p, idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            out.data[r * self.cols..(r + 1) * self.cols].copy_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(parts: &[Self]) -> Self {
        let p = parts[0].p;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack needs equal widths");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Self { p, rows, cols, data }
    }

    /// Places matrices side by side.
    pub fn hstack(parts: &[Self]) -> Self {
        let t: Vec<Self> = parts.iter().map(Self::transpose).collect();
        Self::vstack(&t).transpose()
    }

    /// Block-diagonal sum.
    pub fn block_diag(parts: &[Self]) -> Self {
        let p = parts[0].p;
        let (r, c) = parts.iter().fold((0, 0), |(r, c), m| (r + m.rows, c + m.cols));
        let mut out = Self::zeros(p, r, c);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.data[(r0 + i) * c + c0 + j] = m.get(i, j);
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in c..m.cols {
                let v = m.data[r * m.cols + j] as u64;
                m.data[r * m.cols + j] = (v * inv % p) as u32;
            }
            let prow: Vec<u32> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let cols = m.cols;
                let row = &mut m.data[i * cols..(i + 1) * cols];
                for j in c..cols {
                    let pv = prow[j] as u64;
                    if pv != 0 {
                        row[j] = ((row[j] as u64 + p - f * pv % p) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            return self.transpose().echelon().pivots.len();
        }
        self.echelon().pivots.len()
    }

    /// Right null space as the columns of a `cols x k` matrix, together with
    /// the free column indices. Row `free[i]` of the basis is the unit
    /// vector `e_i`, so a vector `v` in the span has coordinates
    /// `v[free[..]]`.
    pub fn kernel(&self) -> (Self, Vec<usize>) {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let p = self.p;
        let mut basis = Self::zeros(p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.data[f * free.len() + k] = 1;
            for (r, &pc) in e.pivots.iter().enumerate() {
                let v = e.matrix.get(r, f);
                if v != 0 {
                    basis.data[pc * free.len() + k] = (p - v) % p;
                }
            }
        }
        (basis, free)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&[self.clone(), Self::identity(self.p, n)]);
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        Some(e.matrix.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = (*o + a as u64 * b as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix mod {} ({}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}
