//! Direct computation of invariant sequences and channels.

use std::collections::{BTreeMap, HashMap};

use super::fp::FpMatrix;
use super::module::{FpModule, GroupShape, JordanDecomposition};
use crate::error::{Error, Result};
use crate::omega::{ChannelSide, DimensionChannel, InvariantKind};
use crate::quasipoly::qp_fit;
use crate::ring::rat;

/// Largest module dimension the oracle will build.
pub const DEFAULT_DIM_BUDGET: usize = 30_000;

const Z3Z3_M: &str = include_str!("../../data/z3z3-m.gens");

/// Sequences for `n = 1..=count`, keyed by invariant.
pub type OracleTable = BTreeMap<InvariantKind, Vec<u64>>;

/// Modules shipped with the crate: `z3z3-m` (the six-dimensional module
/// for `Z/3 x Z/3`), `z3z3-n` (trivial module induced from the first
/// generator), and `c7-j<m>` (Jordan blocks for `Z/7`).
pub fn builtin_module(id: &str) -> Result<FpModule> {
    let shape = GroupShape::Elab { p: 3, rank: 2 };
    match id {
        "z3z3-m" => parse_gens(Z3Z3_M),
        "z3z3-m-dual" => Ok(parse_gens(Z3Z3_M)?.dual()),
        "z3z3-n" => FpModule::induced_trivial(shape, 0),
        _ => {
            if let Some(m) = id.strip_prefix("c7-j").and_then(|m| m.parse().ok()) {
                return FpModule::jordan(GroupShape::Cyclic { p: 7, order: 7 }, m);
            }
            Err(Error::InvalidArgument(format!("unknown builtin module `{id}`")))
        }
    }
}

/// Parses `p=<prime>`, `order=<q>` or `order=<p>,<p>,..`, then one matrix
/// per generator as rows of space-separated digits. Matrices are separated
/// by blank lines; `#` starts a comment.
pub fn parse_gens(text: &str) -> Result<FpModule> {
    let perr = |line: usize, msg: String| Error::Scenario { line, msg };
    let mut p: Option<u32> = None;
    let mut shape: Option<GroupShape> = None;
    let mut mats: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut current: Vec<Vec<i64>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            if !current.is_empty() {
                mats.push(std::mem::take(&mut current));
            }
            continue;
        }
        if let Some(v) = body.strip_prefix("p=") {
            p = Some(v.trim().parse().map_err(|_| perr(line, format!("bad prime `{v}`")))?);
            continue;
        }
        if let Some(v) = body.strip_prefix("order=") {
            let p = p.ok_or_else(|| perr(line, "order= before p=".into()))?;
            let parts: Vec<u32> = v
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| perr(line, format!("bad order `{v}`"))))
                .collect::<Result<_>>()?;
            shape = Some(if parts.len() == 1 {
                GroupShape::Cyclic { p, order: parts[0] }
            } else {
                if parts.iter().any(|&q| q != p) {
                    return Err(perr(line, format!("elementary abelian factors must all be {p}")));
                }
                GroupShape::Elab {
                    p,
                    rank: parts.len() as u32,
                }
            });
            continue;
        }
        let row = body
            .split_whitespace()
            .map(|s| s.parse::<i64>().map_err(|_| perr(line, format!("bad entry `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        current.push(row);
    }
    if !current.is_empty() {
        mats.push(current);
    }
    let shape = shape.ok_or_else(|| perr(1, "missing order=".into()))?;
    let gens = mats
        .iter()
        .map(|m| FpMatrix::from_rows(shape.prime(), m))
        .collect::<Result<Vec<_>>>()?;
    FpModule::new(shape, gens)
}

/// Cached decompositions `J_a (x) J_b` for a cyclic group.
pub struct JordanTable {
    shape: GroupShape,
    q: usize,
    cache: HashMap<(usize, usize), JordanDecomposition>,
}

impl JordanTable {
    pub fn new(shape: GroupShape) -> Result<Self> {
        let GroupShape::Cyclic { order, .. } = shape else {
            return Err(Error::Precondition("Jordan tables need a cyclic group".into()));
        };
        Ok(Self {
            shape,
            q: order as usize,
            cache: HashMap::new(),
        })
    }

    pub fn block_product(&mut self, a: usize, b: usize) -> Result<&JordanDecomposition> {
        let key = (a.min(b), a.max(b));
        if !self.cache.contains_key(&key) {
            let m = FpModule::jordan(self.shape, key.0)?.tensor(&FpModule::jordan(self.shape, key.1)?)?;
            self.cache.insert(key, m.jordan_decompose()?);
        }
        Ok(&self.cache[&key])
    }

    /// Jordan type of a tensor product, by distributing over blocks.
    pub fn tensor(&mut self, x: &JordanDecomposition, y: &JordanDecomposition) -> Result<JordanDecomposition> {
        let mut out = vec![0u64; self.q];
        let overflow = || Error::Budget("multiplicities exceed 64 bits".into());
        for (i, &mx) in x.mult().iter().enumerate() {
            for (j, &my) in y.mult().iter().enumerate() {
                if mx == 0 || my == 0 {
                    continue;
                }
                let w = mx.checked_mul(my).ok_or_else(overflow)?;
                let prod = self.block_product(i + 1, j + 1)?.clone();
                for (k, &mk) in prod.mult().iter().enumerate() {
                    let add = mk.checked_mul(w).ok_or_else(overflow)?;
                    out[k] = out[k].checked_add(add).ok_or_else(overflow)?;
                }
            }
        }
        Ok(JordanDecomposition::new(out))
    }
}

fn record(table: &mut OracleTable, kinds: &[InvariantKind], c: u64, s: Option<u64>, d: u64) {
    for &k in kinds {
        let v = match k {
            InvariantKind::C | InvariantKind::L => c,
            InvariantKind::S => s.expect("summand counts are only requested for cyclic groups"),
            InvariantKind::D => d,
        };
        table.entry(k).or_default().push(v);
    }
}

pub fn oracle_invariants(m: &FpModule, count: usize, kinds: &[InvariantKind]) -> Result<OracleTable> {
    oracle_invariants_with_budget(m, count, kinds, DEFAULT_DIM_BUDGET)
}

/// `c`, `s`, `d`, `l` of `M^n` for `n = 1..=count`, iterating
/// `core(core(M^(n-1)) (x) M)`. Cyclic groups go through Jordan types;
/// other shapes split off free summands explicitly.
pub fn oracle_invariants_with_budget(
    m: &FpModule,
    count: usize,
    kinds: &[InvariantKind],
    budget: usize,
) -> Result<OracleTable> {
    let mut table = OracleTable::new();
    for &k in kinds {
        table.insert(k, Vec::new());
    }
    if let GroupShape::Cyclic { .. } = m.shape() {
        let mut jt = JordanTable::new(m.shape())?;
        let base = m.jordan_decompose()?;
        let mut x = base.core();
        for n in 1..=count {
            if n > 1 {
                x = jt.tensor(&x, &base)?.core();
            }
            record(&mut table, kinds, x.dim(), Some(x.summands()), x.summands());
        }
        return Ok(table);
    }
    if kinds.contains(&InvariantKind::S) {
        return Err(Error::Unsupported(
            "summand counts need a decomposition into indecomposables; only cyclic groups are supported".into(),
        ));
    }
    let mut x = m.core_split()?;
    for n in 1..=count {
        if n > 1 {
            let dim = x.dim() * m.dim();
            if dim > budget {
                return Err(Error::Budget(format!("M^{n} needs a {dim}-dimensional module, budget {budget}")));
            }
            x = x.tensor(m)?.core_split()?;
        }
        record(&mut table, kinds, x.dim() as u64, None, x.socle_dim() as u64);
    }
    Ok(table)
}

pub fn channel_harvest(n0: &FpModule, depth: usize) -> Result<Vec<DimensionChannel>> {
    channel_harvest_with_budget(n0, depth, DEFAULT_DIM_BUDGET)
}

/// `dim`, `soc` and `len` channels of `w^e core(N0)` for `|e| <= depth`,
/// computed by iterated syzygies and cosyzygies with free summands
/// stripped.
pub fn channel_harvest_with_budget(n0: &FpModule, depth: usize, budget: usize) -> Result<Vec<DimensionChannel>> {
    let g = n0.shape().group_order();
    let step = |x: &FpModule, forward: bool| -> Result<FpModule> {
        let cover = if forward { x.top_dim() } else { x.socle_dim() } * g;
        if cover > budget {
            return Err(Error::Budget(format!("projective cover of dimension {cover}, budget {budget}")));
        }
        let y = if forward { x.syzygy()? } else { x.cosyzygy()? };
        y.core_split()
    };
    let core = n0.core_split()?;
    let mut fwd = vec![(core.dim() as u64, core.socle_dim() as u64)];
    let mut x = core.clone();
    for _ in 0..depth {
        x = step(&x, true)?;
        fwd.push((x.dim() as u64, x.socle_dim() as u64));
    }
    let mut bwd = Vec::new();
    let mut y = core;
    for _ in 0..depth {
        y = step(&y, false)?;
        bwd.push((y.dim() as u64, y.socle_dim() as u64));
    }
    let dims = |v: &[(u64, u64)]| v.iter().map(|p| p.0).collect::<Vec<_>>();
    let socs = |v: &[(u64, u64)]| v.iter().map(|p| p.1).collect::<Vec<_>>();
    Ok(vec![
        DimensionChannel::from_prefixes("dim", dims(&fwd), dims(&bwd)),
        DimensionChannel::from_prefixes("len", dims(&fwd), dims(&bwd)),
        DimensionChannel::from_prefixes("soc", socs(&fwd), socs(&bwd)),
    ])
}

/// Attaches the smallest quasipolynomial tails (quasiperiod at most
/// `t_max`, degree at most `d_max`) fitting each direction's prefix.
/// Directions without a fit are left as they are.
pub fn fit_tails(channel: &DimensionChannel, t_max: usize, d_max: usize) -> Result<DimensionChannel> {
    let side = |s: &ChannelSide, first: usize| -> Result<ChannelSide> {
        let samples: Vec<_> = s
            .prefix
            .iter()
            .enumerate()
            .map(|(i, &v)| (i + first, rat(v as i64)))
            .collect();
        let last = first + samples.len();
        let tail = qp_fit(&samples, t_max, d_max, last)?;
        Ok(ChannelSide::new(s.prefix.clone(), tail))
    };
    DimensionChannel::new(channel.name(), side(channel.forward(), 0)?, side(channel.backward(), 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasipoly::QuasiPoly;

    fn kinds(s: &str) -> Vec<InvariantKind> {
        s.split(',').map(|k| k.parse().unwrap()).collect()
    }

    #[test]
    fn c7_tables() {
        let j2 = builtin_module("c7-j2").unwrap();
        let t = oracle_invariants(&j2, 14, &kinds("c,s")).unwrap();
        assert_eq!(
            t[&InvariantKind::C],
            vec![2, 4, 8, 16, 32, 57, 114, 193, 386, 639, 1278, 2094, 4188, 6829]
        );
        assert_eq!(
            t[&InvariantKind::S],
            vec![1, 2, 3, 6, 10, 19, 33, 61, 108, 197, 352, 638, 1145, 2069]
        );
    }

    #[test]
    fn cyclic_fast_path_matches_matrices() {
        let j2 = builtin_module("c7-j2").unwrap();
        let fast = oracle_invariants(&j2, 6, &kinds("c,d")).unwrap();
        let mut x = j2.clone();
        for n in 1..=6 {
            if n > 1 {
                x = x.tensor(&j2).unwrap().core_split().unwrap();
            }
            assert_eq!(fast[&InvariantKind::C][n - 1], x.dim() as u64);
            assert_eq!(fast[&InvariantKind::D][n - 1], x.socle_dim() as u64);
        }
    }

    #[test]
    fn z3z3_module() {
        let m = builtin_module("z3z3-m").unwrap();
        assert_eq!(m.dim(), 6);
        assert_eq!(m.socle_dim(), 2);
        assert_eq!(m.dual().socle_dim(), 2);
        assert_eq!(m.top_dim(), 2);
        assert_eq!(m.syzygy().unwrap().dim(), 12);
        let mm = m.tensor(&m).unwrap();
        assert_eq!(mm.dim(), 36);
        assert_eq!(mm.free_rank(), 1);
        assert_eq!(mm.core_split().unwrap().dim(), 27);
        let t = oracle_invariants(&m, 3, &kinds("c,d,l")).unwrap();
        assert_eq!(&t[&InvariantKind::C][..2], &[6, 27]);
        assert_eq!(t[&InvariantKind::C], t[&InvariantKind::L]);
        assert!(matches!(
            oracle_invariants(&m, 2, &kinds("s")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn free_module_has_no_core() {
        let kg = FpModule::regular(GroupShape::Cyclic { p: 7, order: 7 });
        let t = oracle_invariants(&kg, 4, &kinds("c,s")).unwrap();
        assert_eq!(t[&InvariantKind::C], vec![0, 0, 0, 0]);
        let ch = channel_harvest(&kg, 2).unwrap();
        assert_eq!(ch[0].forward().prefix, vec![0, 0, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        let m = builtin_module("z3z3-m").unwrap();
        assert!(matches!(
            oracle_invariants_with_budget(&m, 3, &kinds("c"), 100),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn j2_channels() {
        let j2 = builtin_module("c7-j2").unwrap();
        let ch = channel_harvest(&j2, 6).unwrap();
        let dim = fit_tails(&ch[0], 3, 1).unwrap();
        assert_eq!(dim.forward().prefix, vec![2, 5, 2, 5, 2, 5, 2]);
        assert_eq!(dim.backward().prefix, vec![5, 2, 5, 2, 5, 2]);
        assert_eq!(dim.forward().tail, Some(QuasiPoly::periodic(&[2, 5], 0).unwrap()));
        assert_eq!(dim.backward().tail, Some(QuasiPoly::periodic(&[2, 5], 1).unwrap()));
    }

    #[test]
    fn trivial_channels_grow_linearly() {
        let k = FpModule::trivial(GroupShape::Elab { p: 3, rank: 2 });
        let ch = channel_harvest(&k, 8).unwrap();
        assert_eq!(&ch[0].forward().prefix[..5], &[1, 8, 10, 17, 19]);
        let fitted = fit_tails(&ch[0], 2, 1).unwrap();
        let tail = fitted.forward().tail.as_ref().unwrap();
        assert!(tail.degree() <= 1);
    }

    #[test]
    fn gens_parse_errors() {
        assert!(parse_gens("p=3\n1 0\n0 1\n").is_err());
        assert!(parse_gens("p=3\norder=3,5\n1\n\n1\n").is_err());
        let m = parse_gens("p=7\norder=7\n1 1\n0 1\n").unwrap();
        assert_eq!(m.jordan_decompose().unwrap().to_string(), "J2");
    }
}
