//! Finite-dimensional modules for cyclic and elementary abelian p-groups,
//! given by commuting generator matrices over `F_p`.

use std::fmt;

use super::fp::FpMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupShape {
    /// Cyclic of order `order = p^k`, one generator.
    Cyclic { p: u32, order: u32 },
    /// `(Z/p)^rank`, `rank` generators of order `p`.
    Elab { p: u32, rank: u32 },
}

impl GroupShape {
    pub fn prime(&self) -> u32 {
        match *self {
            GroupShape::Cyclic { p, .. } | GroupShape::Elab { p, .. } => p,
        }
    }

    /// Order of each generator.
    pub fn gen_order(&self) -> u32 {
        match *self {
            GroupShape::Cyclic { order, .. } => order,
            GroupShape::Elab { p, .. } => p,
        }
    }

    pub fn gen_count(&self) -> usize {
        match *self {
            GroupShape::Cyclic { .. } => 1,
            GroupShape::Elab { rank, .. } => rank as usize,
        }
    }

    pub fn group_order(&self) -> usize {
        (self.gen_order() as usize).pow(self.gen_count() as u32)
    }

    /// Exponent vectors of all group elements, first generator fastest.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let q = self.gen_order();
        let r = self.gen_count();
        (0..self.group_order())
            .map(|mut idx| {
                (0..r)
                    .map(|_| {
                        let e = (idx % q as usize) as u32;
                        idx /= q as usize;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    fn element_index(&self, exps: &[u32]) -> usize {
        let q = self.gen_order() as usize;
        exps.iter().rev().fold(0, |acc, &e| acc * q + e as usize)
    }

    fn validate(&self) -> Result<()> {
        let p = self.prime();
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if let GroupShape::Cyclic { order, .. } = *self {
            let mut o = order;
            while o % p == 0 {
                o /= p;
            }
            if o != 1 || order < p {
                return Err(Error::InvalidArgument(format!("order {order} is not a power of {p}")));
            }
        }
        if let GroupShape::Elab { rank: 0, .. } = *self {
            return Err(Error::InvalidArgument("elementary abelian rank must be positive".into()));
        }
        Ok(())
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupShape::Cyclic { order, .. } => write!(f, "Z/{order}"),
            GroupShape::Elab { p, rank } => write!(f, "(Z/{p})^{rank}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule {
    shape: GroupShape,
    dim: usize,
    gens: Vec<FpMatrix>,
}

/// Multiplicities `m_1..m_q` of the Jordan blocks `J_1..J_q` of a module for
/// a cyclic group of order `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanDecomposition {
    mult: Vec<u64>,
}

impl JordanDecomposition {
    pub fn new(mult: Vec<u64>) -> Self {
        Self { mult }
    }

    /// The single block `J_m` among blocks of size at most `q`.
    pub fn block(q: usize, m: usize) -> Self {
        let mut mult = vec![0; q];
        mult[m - 1] = 1;
        Self { mult }
    }

    /// `mult()[i]` is the multiplicity of `J_{i+1}`.
    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn multiplicity(&self, m: usize) -> u64 {
        self.mult[m - 1]
    }

    pub fn dim(&self) -> u64 {
        self.mult.iter().enumerate().map(|(i, &m)| (i as u64 + 1) * m).sum()
    }

    pub fn summands(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// The decomposition with all `J_q` (free) blocks removed.
    pub fn core(&self) -> Self {
        let mut mult = self.mult.clone();
        if let Some(last) = mult.last_mut() {
            *last = 0;
        }
        Self { mult }
    }
}

impl fmt::Display for JordanDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| if m == 1 { format!("J{}", i + 1) } else { format!("{m}J{}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FpModule {
    /// Checks that the generators are square, invertible, commuting and
    /// have the right order.
    pub fn new(shape: GroupShape, gens: Vec<FpMatrix>) -> Result<Self> {
        shape.validate()?;
        if gens.len() != shape.gen_count() {
            return Err(Error::SizeMismatch(format!(
                "{shape} needs {} generators, got {}",
                shape.gen_count(),
                gens.len()
            )));
        }
        let dim = gens[0].rows();
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::SizeMismatch(format!("generator {} is not {dim}x{dim}", i + 1)));
            }
            if g.prime() != shape.prime() {
                return Err(Error::SizeMismatch(format!("generator {} has the wrong prime", i + 1)));
            }
            if !g.pow(shape.gen_order() as u64).is_identity() {
                return Err(Error::InvalidArgument(format!(
                    "generator {} does not have order dividing {}",
                    i + 1,
                    shape.gen_order()
                )));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if gens[i].mul(&gens[j])? != gens[j].mul(&gens[i])? {
                    return Err(Error::InvalidArgument(format!(
                        "generators {} and {} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { shape, dim, gens })
    }

    fn unchecked(shape: GroupShape, dim: usize, gens: Vec<FpMatrix>) -> Self {
        Self { shape, dim, gens }
    }

    pub fn zero(shape: GroupShape) -> Self {
        let p = shape.prime();
        Self::unchecked(shape, 0, vec![FpMatrix::zeros(p, 0, 0); shape.gen_count()])
    }

    pub fn trivial(shape: GroupShape) -> Self {
        let p = shape.prime();
        Self::unchecked(shape, 1, vec![FpMatrix::identity(p, 1); shape.gen_count()])
    }

    /// The group algebra `kG` acting on itself by left multiplication.
    pub fn regular(shape: GroupShape) -> Self {
        let n = shape.group_order();
        let q = shape.gen_order();
        let elements = shape.elements();
        let gens = (0..shape.gen_count())
            .map(|g| {
                let mut m = FpMatrix::zeros(shape.prime(), n, n);
                for (col, e) in elements.iter().enumerate() {
                    let mut image = e.clone();
                    image[g] = (image[g] + 1) % q;
                    m.set(shape.element_index(&image), col, 1);
                }
                m
            })
            .collect();
        Self::unchecked(shape, n, gens)
    }

    /// The Jordan block `J_m` for a cyclic group.
    pub fn jordan(shape: GroupShape, m: usize) -> Result<Self> {
        let GroupShape::Cyclic { p, order } = shape else {
            return Err(Error::Precondition("Jordan blocks need a cyclic group".into()));
        };
        if m == 0 || m > order as usize {
            return Err(Error::InvalidArgument(format!("J_{m} does not exist for Z/{order}")));
        }
        let g = FpMatrix::from_fn(p, m, m, |i, j| u32::from(i == j || j == i + 1));
        Ok(Self::unchecked(shape, m, vec![g]))
    }

    /// Induced module `k` from the subgroup generated by generator `index`
    /// (0-based) of an elementary abelian group: that generator acts
    /// trivially, the others permute the cosets.
    pub fn induced_trivial(shape: GroupShape, index: usize) -> Result<Self> {
        let GroupShape::Elab { p, rank } = shape else {
            return Err(Error::Precondition("induction needs an elementary abelian group".into()));
        };
        if index >= rank as usize {
            return Err(Error::InvalidArgument(format!("no generator {index}")));
        }
        let quotient = GroupShape::Elab { p, rank: rank - 1 };
        let reg = if rank == 1 {
            Self::trivial(quotient)
        } else {
            Self::regular(quotient)
        };
        let n = reg.dim;
        let mut gens = Vec::new();
        let mut others = reg.gens.into_iter();
        for g in 0..rank as usize {
            if g == index {
                gens.push(FpMatrix::identity(p, n));
            } else {
                gens.push(others.next().expect("generator count"));
            }
        }
        Ok(Self::unchecked(shape, n, gens))
    }

    pub fn shape(&self) -> GroupShape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[FpMatrix] {
        &self.gens
    }

    fn prime(&self) -> u32 {
        self.shape.prime()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::SizeMismatch(format!(
                "modules for {} and {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        if self.dim == 0 {
            return Ok(other.clone());
        }
        if other.dim == 0 {
            return Ok(self.clone());
        }
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| FpMatrix::block_diag(&[a.clone(), b.clone()]))
            .collect();
        Ok(Self::unchecked(self.shape, self.dim + other.dim, gens))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect();
        Ok(Self::unchecked(self.shape, self.dim * other.dim, gens))
    }

    pub fn dual(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|g| g.inverse().expect("generators are invertible").transpose())
            .collect();
        Self::unchecked(self.shape, self.dim, gens)
    }

    /// Matrix of the norm element `prod_i (g_i - 1)^(q-1)`.
    fn norm_matrix(&self) -> FpMatrix {
        let q = self.shape.gen_order() as u64;
        self.gens.iter().fold(FpMatrix::identity(self.prime(), self.dim), |acc, g| {
            acc.mul(&g.minus_identity().pow(q - 1)).expect("square")
        })
    }

    pub fn free_rank(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.norm_matrix().rank()
    }

    pub fn core_dim(&self) -> usize {
        self.dim - self.shape.group_order() * self.free_rank()
    }

    /// Matrix of the group element with the given exponents.
    fn element_matrix(&self, exps: &[u32]) -> FpMatrix {
        self.gens
            .iter()
            .zip(exps)
            .fold(FpMatrix::identity(self.prime(), self.dim), |acc, (g, &e)| {
                acc.mul(&g.pow(e as u64)).expect("square")
            })
    }

    /// Restriction to the submodule spanned by the columns of `basis`, whose
    /// rows at `free` form an identity matrix.
    fn restrict(&self, basis: &FpMatrix, free: &[usize]) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul(basis).expect("conformable").select_rows(free))
            .collect();
        Self::unchecked(self.shape, basis.cols(), gens)
    }

    /// A complement of a maximal free summand. A free submodule `F` is
    /// generated by vectors whose norm images are independent; a functional
    /// dual to those images induces an equivariant map `M -> kG^f` that is
    /// an isomorphism on `F`, and its kernel is the complement.
    pub fn core_split(&self) -> Result<Self> {
        let f = self.free_rank();
        if f == 0 {
            return Ok(self.clone());
        }
        let norm = self.norm_matrix();
        let pivots = norm.echelon().pivots;
        let w = norm.select_cols(&pivots);
        // rows of w that carry an invertible f x f minor
        let rows = w.transpose().echelon().pivots;
        let minor = w.select_rows(&rows);
        let inv = minor
            .inverse()
            .ok_or_else(|| Error::Integrity("norm minor is singular".into()))?;
        let mut lambda = FpMatrix::zeros(self.prime(), f, self.dim);
        for i in 0..f {
            for (k, &r) in rows.iter().enumerate() {
                lambda.set(i, r, inv.get(i, k));
            }
        }
        let parts: Vec<FpMatrix> = self
            .shape
            .elements()
            .iter()
            .map(|e| lambda.mul(&self.element_matrix(e)).expect("conformable"))
            .collect();
        let phi = FpMatrix::vstack(&parts);
        let (basis, free) = phi.kernel();
        let core = self.restrict(&basis, &free);
        if core.dim != self.core_dim() {
            return Err(Error::Integrity(format!(
                "split produced dimension {} instead of {}",
                core.dim,
                self.core_dim()
            )));
        }
        Ok(core)
    }

    /// Column space of `sum_i (g_i - 1)`.
    fn radical_span(&self) -> FpMatrix {
        let parts: Vec<FpMatrix> = self.gens.iter().map(FpMatrix::minus_identity).collect();
        FpMatrix::hstack(&parts)
    }

    pub fn radical_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.radical_span().rank()
    }

    pub fn top_dim(&self) -> usize {
        self.dim - self.radical_dim()
    }

    pub fn socle_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let parts: Vec<FpMatrix> = self.gens.iter().map(FpMatrix::minus_identity).collect();
        self.dim - FpMatrix::vstack(&parts).rank()
    }

    /// Kernel of a projective cover `kG^t -> M`.
    pub fn syzygy(&self) -> Result<Self> {
        if self.dim == 0 {
            return Ok(self.clone());
        }
        let rad = self.radical_span();
        // extend a basis of rad M by unit vectors to get top generators
        let aug = FpMatrix::hstack(&[rad, FpMatrix::identity(self.prime(), self.dim)]);
        let offset = self.dim * self.gens.len();
        let tops: Vec<usize> = aug
            .echelon()
            .pivots
            .into_iter()
            .filter(|&c| c >= offset)
            .map(|c| c - offset)
            .collect();
        let elements = self.shape.elements();
        let mats: Vec<FpMatrix> = elements.iter().map(|e| self.element_matrix(e)).collect();
        // column (s, g) of the cover map is g * m_s
        let mut cols = Vec::new();
        for &s in &tops {
            for m in &mats {
                cols.push(m.select_cols(&[s]));
            }
        }
        let pi = FpMatrix::hstack(&cols);
        let (basis, free) = pi.kernel();
        let reg = Self::regular(self.shape);
        let cover_gens: Vec<FpMatrix> = reg
            .gens
            .iter()
            .map(|g| FpMatrix::block_diag(&vec![g.clone(); tops.len()]))
            .collect();
        let cover = Self::unchecked(self.shape, tops.len() * reg.dim, cover_gens);
        let omega = cover.restrict(&basis, &free);
        if omega.dim + self.dim != cover.dim {
            return Err(Error::Integrity("projective cover is not surjective".into()));
        }
        Ok(omega)
    }

    pub fn cosyzygy(&self) -> Result<Self> {
        Ok(self.dual().syzygy()?.dual())
    }

    /// Rank profile of `(g - 1)^k` for `k = 0..=q`.
    pub fn rank_profile(&self) -> Result<Vec<usize>> {
        let GroupShape::Cyclic { order, .. } = self.shape else {
            return Err(Error::Precondition("rank profiles need a cyclic group".into()));
        };
        let x = self.gens[0].minus_identity();
        let mut power = FpMatrix::identity(self.prime(), self.dim);
        let mut ranks = vec![self.dim];
        for _ in 0..order {
            if self.dim > 0 {
                power = power.mul(&x)?;
            }
            let r = if self.dim == 0 { 0 } else { power.rank() };
            ranks.push(r);
            if r == 0 {
                break;
            }
        }
        ranks.resize(order as usize + 2, 0);
        Ok(ranks)
    }

    pub fn jordan_decompose(&self) -> Result<JordanDecomposition> {
        let r = self.rank_profile()?;
        let q = r.len() - 2;
        let mult = (1..=q).map(|j| (r[j - 1] + r[j + 1] - 2 * r[j]) as u64).collect();
        Ok(JordanDecomposition { mult })
    }

    /// Block-diagonal module realising a Jordan type.
    pub fn from_jordan(shape: GroupShape, jt: &JordanDecomposition) -> Result<Self> {
        let mut out = Self::zero(shape);
        for (i, &m) in jt.mult().iter().enumerate() {
            for _ in 0..m {
                out = out.direct_sum(&Self::jordan(shape, i + 1)?)?;
            }
        }
        Ok(out)
    }
}
