//! Square matrices over the Laurent ring `Q[w, 1/w]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{LaurentPoly, Rational};

/// Square matrix with Laurent polynomial entries.
#[derive(Clone, PartialEq, Debug)]
pub struct LMatrix(Matrix<LaurentPoly>);

/// Monic characteristic polynomial; `coeffs[k]` multiplies `x^k`.
#[derive(Clone, PartialEq, Debug)]
pub struct LCharPoly {
    pub coeffs: Vec<LaurentPoly>,
}

impl LMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::SizeMismatch("Laurent matrix must be square and nonempty".into()));
        }
        Ok(Self(m))
    }

    /// Builds a matrix from Laurent literals.
    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn diagonal(entries: Vec<LaurentPoly>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        Self(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        self.0.get(i, j)
    }

    pub fn row(&self, i: usize) -> Vec<LaurentPoly> {
        self.0.row(i).to_vec()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        (0..self.size()).flat_map(move |i| self.0.row(i).iter())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.size(),
                self.size(),
                other.size(),
                other.size()
            )));
        }
        Ok(Self(self.0.mul(&other.0)?))
    }

    pub fn mat_pow(&self, n: u64) -> Self {
        Self(self.0.pow(n).expect("square by construction"))
    }

    /// `v * A` for a row vector `v`.
    pub fn row_advance(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        self.0.vec_mul(v)
    }

    pub fn char_poly(&self) -> LCharPoly {
        LCharPoly {
            coeffs: self.0.char_poly().expect("square by construction"),
        }
    }

    /// Substitutes the characteristic polynomial into the matrix and tests
    /// for the zero matrix.
    pub fn cayley_hamilton_check(&self) -> bool {
        let cp = self.char_poly();
        self.0
            .eval_poly(&cp.coeffs)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }

    /// Entrywise value at `w = 1`.
    pub fn eval_one(&self) -> Matrix<Rational> {
        self.0.map(LaurentPoly::eval_one)
    }

    /// Entrywise value at a nonzero rational point.
    pub fn eval_at(&self, x: &Rational) -> Matrix<Rational> {
        self.0.map(|e| e.eval(x))
    }

    pub fn as_matrix(&self) -> &Matrix<LaurentPoly> {
        &self.0
    }
}

/// Unit row vector `e_j` of length `n`.
pub fn unit_row(n: usize, j: usize) -> Vec<LaurentPoly> {
    (0..n)
        .map(|i| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
        .collect()
}

impl LCharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Entrywise value at `w = 1`.
    pub fn eval_one(&self) -> Vec<Rational> {
        self.coeffs.iter().map(LaurentPoly::eval_one).collect()
    }
}

impl fmt::Display for LCharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
