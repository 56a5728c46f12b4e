//! Tensor systems over `N[w, 1/w]`: the orbit-basis matrix `T` of tensoring
//! with a fixed module, the rows `initial * T^(n-1)` describing
//! `core(M^n)`, and the invariant sequences read off them.

mod channel;
mod scenario;

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::cfinite::CFiniteSeq;
use crate::convolve::{GuessRequest, PolySeqRec};
use crate::error::{Error, Result};
use crate::guess::GuessReport;
use crate::linalg::{recurrence_from_char_poly, Matrix};
use crate::lmatrix::LMatrix;
use crate::ring::{rat, LaurentPoly, Rational};

pub use channel::{ChannelSide, DimensionChannel, OrbitRep};
pub use scenario::{load_builtin, load_scenario, parse_scenario, PrefixData, Scenario, BUILTINS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantKind {
    /// Dimension of the core.
    C,
    /// Number of indecomposable summands of the core.
    S,
    /// Socle length of the core.
    D,
    /// Composition length of the core.
    L,
}

impl InvariantKind {
    /// Channel read by the kind; `None` for the summand count.
    pub fn channel(&self) -> Option<&'static str> {
        match self {
            InvariantKind::C => Some("dim"),
            InvariantKind::S => None,
            InvariantKind::D => Some("soc"),
            InvariantKind::L => Some("len"),
        }
    }

    pub fn letter(&self) -> char {
        match self {
            InvariantKind::C => 'c',
            InvariantKind::S => 's',
            InvariantKind::D => 'd',
            InvariantKind::L => 'l',
        }
    }
}

impl FromStr for InvariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "c" => Ok(InvariantKind::C),
            "s" => Ok(InvariantKind::S),
            "d" => Ok(InvariantKind::D),
            "l" => Ok(InvariantKind::L),
            other => Err(Error::InvalidArgument(format!("unknown invariant `{other}`"))),
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaClass {
    Plus,
    Minus,
    Neither,
}

impl fmt::Display for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaClass::Plus => "plus",
            OmegaClass::Minus => "minus",
            OmegaClass::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorSystem {
    name: String,
    orbits: Vec<OrbitRep>,
    t: LMatrix,
    initial: Vec<LaurentPoly>,
}

impl TensorSystem {
    /// Row `i` of `t` expresses `core(M (x) N_i)` in the orbit basis and
    /// `initial` expresses `core(M)`; all entries must lie in `N[w, 1/w]`.
    pub fn new(name: &str, orbits: Vec<OrbitRep>, t: LMatrix, initial: Vec<LaurentPoly>) -> Result<Self> {
        let s = orbits.len();
        if t.size() != s || initial.len() != s {
            return Err(Error::SizeMismatch(format!(
                "{s} orbits, {0}x{0} matrix, initial row of length {1}",
                t.size(),
                initial.len()
            )));
        }
        for i in 0..s {
            for j in 0..s {
                if !t.get(i, j).is_natural() {
                    return Err(Error::Positivity(format!(
                        "T[{}][{}] = {} is not in N[w, 1/w]",
                        i + 1,
                        j + 1,
                        t.get(i, j)
                    )));
                }
            }
        }
        for (j, v) in initial.iter().enumerate() {
            if !v.is_natural() {
                return Err(Error::Positivity(format!(
                    "v[{}] = {v} is not in N[w, 1/w]",
                    j + 1
                )));
            }
        }
        Ok(Self {
            name: name.to_string(),
            orbits,
            t,
            initial,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn orbits(&self) -> &[OrbitRep] {
        &self.orbits
    }

    pub fn matrix(&self) -> &LMatrix {
        &self.t
    }

    pub fn initial(&self) -> &[LaurentPoly] {
        &self.initial
    }

    pub fn size(&self) -> usize {
        self.orbits.len()
    }

    /// `initial * T^(n-1)`, the orbit-basis expression of `core(M^n)`.
    pub fn core_row(&self, n: usize) -> Result<Vec<LaurentPoly>> {
        if n == 0 {
            return Err(Error::InvalidArgument("core rows start at n = 1".into()));
        }
        Ok(self.core_rows(n)?.pop().expect("n >= 1"))
    }

    /// Rows for `n = 1..=count`.
    pub fn core_rows(&self, count: usize) -> Result<Vec<Vec<LaurentPoly>>> {
        let mut rows = Vec::with_capacity(count);
        let mut row = self.initial.clone();
        for n in 0..count {
            if n > 0 {
                row = self.t.row_advance(&row)?;
            }
            rows.push(row.clone());
        }
        Ok(rows)
    }

    /// Values for `n = 1..=count`.
    pub fn invariant_seq(&self, kind: InvariantKind, count: usize) -> Result<Vec<Rational>> {
        let rows = self.core_rows(count)?;
        let Some(name) = kind.channel() else {
            return Ok(rows
                .iter()
                .map(|r| r.iter().map(LaurentPoly::eval_one).sum())
                .collect());
        };
        let channels = self
            .orbits
            .iter()
            .map(|o| o.channel(name))
            .collect::<Result<Vec<_>>>()?;
        rows.iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (j, entry) in row.iter().enumerate() {
                    for (e, c) in entry.terms() {
                        let v = channels[j].value(e)?.ok_or_else(|| Error::Coverage {
                            orbit: self.orbits[j].id.clone(),
                            channel: name.to_string(),
                            exponent: e,
                        })?;
                        acc += c * rat(v as i64);
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// `T` at `w = 1`.
    pub fn summand_matrix(&self) -> Matrix<Rational> {
        self.t.eval_one()
    }

    /// Recurrence for the summand counts from the characteristic polynomial
    /// of `T` at `w = 1`. A factor `x^k` of the characteristic polynomial
    /// only delays the start of the shorter recurrence by `k`. The result is
    /// 0-based: term `i` is `s_{i+1}`.
    pub fn s_recurrence(&self) -> Result<CFiniteSeq> {
        let cp = self.summand_matrix().char_poly()?;
        let k = cp.iter().take_while(|c| c.is_zero()).count();
        let q = &cp[k..];
        let coeffs = recurrence_from_char_poly(q);
        let valid_from = k + coeffs.len();
        let prefix = self.invariant_seq(InvariantKind::S, valid_from + 2 * coeffs.len() + 1)?;
        CFiniteSeq::new(coeffs, valid_from, prefix)
    }

    pub fn classify(&self) -> OmegaClass {
        let entries: Vec<&LaurentPoly> = self.t.entries().chain(self.initial.iter()).collect();
        let lo = entries.iter().filter_map(|e| e.min_exp()).min().unwrap_or(0);
        let hi = entries.iter().filter_map(|e| e.max_exp()).max().unwrap_or(0);
        if lo >= 0 {
            OmegaClass::Plus
        } else if hi <= 0 {
            OmegaClass::Minus
        } else {
            OmegaClass::Neither
        }
    }

    pub fn invariant_guess(&self, kind: InvariantKind, count: usize, request: GuessRequest) -> Result<GuessReport> {
        request.run(&self.invariant_seq(kind, count)?)
    }

    /// `s_N / s_{N-1}` and the matrix whose characteristic polynomial has
    /// the limiting growth rate among its roots.
    pub fn gamma_estimate(&self, count: usize) -> Result<(f64, Matrix<Rational>)> {
        if count < 4 {
            return Err(Error::InvalidArgument("growth estimate needs at least 4 terms".into()));
        }
        let s = self.invariant_seq(InvariantKind::S, count)?;
        let (last, prev) = (&s[count - 1], &s[count - 2]);
        let ratio = if prev.is_zero() {
            0.0
        } else {
            (last / prev).to_f64().unwrap_or(f64::NAN)
        };
        Ok((ratio, self.summand_matrix()))
    }

    /// Scenario text that parses back to this system.
    pub fn to_scenario(&self) -> String {
        let mut out = format!("[system] name={} size={}\n", self.name, self.size());
        for o in &self.orbits {
            out.push_str(&format!("[orbit {}] name={}\n", o.id, o.name));
            for c in o.channels.values() {
                out.push_str(&format!("{}\n{}\n", c.line(false), c.line(true)));
            }
        }
        out.push_str("[matrix]\n");
        for i in 0..self.size() {
            for j in 0..self.size() {
                let e = self.t.get(i, j);
                if !e.is_zero() {
                    out.push_str(&format!("T[{}][{}] = \"{e}\"\n", i + 1, j + 1));
                }
            }
        }
        out.push_str("[initial]\n");
        for (j, v) in self.initial.iter().enumerate() {
            if !v.is_zero() {
                out.push_str(&format!("v[{}] = \"{v}\"\n", j + 1));
            }
        }
        out
    }
}

/// `n -> sum_e [w^e] P_n * channel(e)` for `n < count`.
pub fn channel_values(channel: &DimensionChannel, ps: &PolySeqRec<LaurentPoly>, count: usize) -> Result<Vec<Rational>> {
    ps.terms(count)?
        .iter()
        .map(|p| {
            let mut acc = Rational::zero();
            for (e, c) in p.terms() {
                let v = channel.value(e)?.ok_or_else(|| Error::Coverage {
                    orbit: "-".into(),
                    channel: channel.name().to_string(),
                    exponent: e,
                })?;
                acc += c * rat(v as i64);
            }
            Ok(acc)
        })
        .collect()
}

/// Substitutes a channel into a polynomial sequence and guesses a relation
/// for the result.
pub fn channel_pipeline(
    channel: &DimensionChannel,
    ps: &PolySeqRec<LaurentPoly>,
    count: usize,
    request: GuessRequest,
) -> Result<GuessReport> {
    request.run(&channel_values(channel, ps, count)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guess::{verify_relation, Relation};
    use crate::quasipoly::QuasiPoly;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn single(t: &str) -> TensorSystem {
        let dim = DimensionChannel::from_prefixes("dim", vec![1], vec![]);
        let orbit = OrbitRep::new("k", "k", vec![dim]).unwrap();
        TensorSystem::new("one", vec![orbit], LMatrix::parse(&[&[t]]).unwrap(), vec![LaurentPoly::one()]).unwrap()
    }

    fn c7() -> TensorSystem {
        match load_builtin("c7").unwrap() {
            Scenario::System(s) => s,
            Scenario::Prefix(_) => unreachable!(),
        }
    }

    fn z3z3() -> TensorSystem {
        match load_builtin("z3z3").unwrap() {
            Scenario::System(s) => s,
            Scenario::Prefix(_) => unreachable!(),
        }
    }

    #[test]
    fn c7_rows() {
        let sys = c7();
        let row = sys.core_row(3).unwrap();
        let text: Vec<String> = row.iter().map(ToString::to_string).collect();
        assert_eq!(text, vec!["0", "2", "w"]);
    }

    #[test]
    fn c7_sequences() {
        let sys = c7();
        assert_eq!(
            sys.invariant_seq(InvariantKind::C, 14).unwrap(),
            ints(&[2, 4, 8, 16, 32, 57, 114, 193, 386, 639, 1278, 2094, 4188, 6829])
        );
        assert_eq!(
            sys.invariant_seq(InvariantKind::S, 14).unwrap(),
            ints(&[1, 2, 3, 6, 10, 19, 33, 61, 108, 197, 352, 638, 1145, 2069])
        );
        assert_eq!(sys.invariant_seq(InvariantKind::L, 14).unwrap(), sys.invariant_seq(InvariantKind::C, 14).unwrap());
        assert_eq!(sys.invariant_seq(InvariantKind::D, 6).unwrap(), sys.invariant_seq(InvariantKind::S, 6).unwrap());
    }

    #[test]
    fn c7_c_guess() {
        let report = c7()
            .invariant_guess(InvariantKind::C, 30, GuessRequest::CFinite { max_order: 8, max_offset: 4 })
            .unwrap();
        assert_eq!(report.recurrence().unwrap(), &ints(&[0, 5, 0, -6, 0, 1])[..]);
    }

    #[test]
    fn z3z3_rows_and_summands() {
        let sys = z3z3();
        assert_eq!(sys.classify(), OmegaClass::Neither);
        let row = sys.core_row(2).unwrap();
        let text: Vec<String> = row.iter().map(ToString::to_string).collect();
        assert_eq!(text, vec!["w", "w^-1", "1"]);
        let s = sys.invariant_seq(InvariantKind::S, 8).unwrap();
        assert_eq!(s, ints(&[1, 3, 9, 27, 81, 243, 729, 2187]));
        let rec = sys.s_recurrence().unwrap();
        assert_eq!(rec.coeffs(), &ints(&[5, -6])[..]);
        assert_eq!(rec.valid_from(), 3);
        assert_eq!(rec.terms(8), s);
        assert_eq!(sys.invariant_seq(InvariantKind::C, 2).unwrap(), ints(&[6, 27]));
    }

    #[test]
    fn z3z3_char_poly() {
        let cp = z3z3().matrix().char_poly();
        let text: Vec<String> = cp.coeffs.iter().map(ToString::to_string).collect();
        assert_eq!(text, vec!["3*w^-1 - 3*w^3", "-w^-2 + 7*w^2", "-5*w", "1"]);
    }

    #[test]
    fn single_orbit() {
        let sys = single("2");
        let rec = sys.s_recurrence().unwrap();
        assert_eq!(rec.coeffs(), &ints(&[2])[..]);
        assert_eq!(rec.terms(4), ints(&[1, 2, 4, 8]));
        let (g, a) = sys.gamma_estimate(6).unwrap();
        assert_eq!(g, 2.0);
        assert_eq!(a.rows(), 1);
    }

    #[test]
    fn gamma_for_z3z3() {
        let (g, _) = z3z3().gamma_estimate(10).unwrap();
        assert_eq!(g, 3.0);
    }

    #[test]
    fn classification() {
        assert_eq!(single("1 + w + w^2").classify(), OmegaClass::Plus);
        assert_eq!(single("1 + w^-1").classify(), OmegaClass::Minus);
    }

    #[test]
    fn positivity_enforced() {
        let dim = DimensionChannel::from_prefixes("dim", vec![1], vec![]);
        let orbit = OrbitRep::new("k", "k", vec![dim]).unwrap();
        let t = LMatrix::parse(&[&["0 - w"]]).unwrap();
        assert!(matches!(
            TensorSystem::new("bad", vec![orbit], t, vec![LaurentPoly::one()]),
            Err(Error::Positivity(_))
        ));
    }

    #[test]
    fn coverage_error_names_orbit() {
        let dim = DimensionChannel::from_prefixes("dim", vec![1, 1], vec![]);
        let orbit = OrbitRep::new("k", "k", vec![dim]).unwrap();
        let sys = TensorSystem::new("w", vec![orbit], LMatrix::parse(&[&["w"]]).unwrap(), vec![LaurentPoly::one()])
            .unwrap();
        assert_eq!(
            sys.invariant_seq(InvariantKind::C, 3).unwrap_err(),
            Error::Coverage {
                orbit: "k".into(),
                channel: "dim".into(),
                exponent: 2
            }
        );
        assert!(matches!(
            sys.invariant_seq(InvariantKind::D, 1),
            Err(Error::MissingChannel { .. })
        ));
    }

    #[test]
    fn pipeline_on_j2_channel() {
        let j2 = c7().orbits()[1].channel("dim").unwrap().clone();
        let x = LaurentPoly::parse_with_symbol("x", "x").unwrap();
        let ps = PolySeqRec::powers(x);
        let v = channel_values(&j2, &ps, 8).unwrap();
        assert_eq!(v, ints(&[2, 5, 2, 5, 2, 5, 2, 5]));
        let r = channel_pipeline(&j2, &ps, 20, GuessRequest::CFinite { max_order: 4, max_offset: 2 }).unwrap();
        assert!(r.found());
        let onex = LaurentPoly::parse_with_symbol("1 + x", "x").unwrap();
        let ps = PolySeqRec::powers(onex);
        let r = channel_pipeline(&j2, &ps, 24, GuessRequest::CFinite { max_order: 4, max_offset: 2 }).unwrap();
        assert!(r.found());
        assert!(verify_relation(&channel_values(&j2, &ps, 40).unwrap(), &r));
    }

    #[test]
    fn pipeline_with_laurent_powers() {
        let ch = DimensionChannel::from_prefixes("dim", vec![1], vec![])
            .with_forward_tail(QuasiPoly::parse("quasipoly T=1 start=0 polys=[1]").unwrap())
            .unwrap()
            .with_backward_tail(QuasiPoly::periodic(&[0], 1).unwrap())
            .unwrap();
        let ps = PolySeqRec::powers(LaurentPoly::parse_with_symbol("x^-1 + x", "x").unwrap());
        let r = channel_pipeline(&ch, &ps, 40, GuessRequest::Algebraic { deg_t: 4, deg_y: 2, margin: 8 }).unwrap();
        assert!(r.found());
        assert!(matches!(r.relation, Some(Relation::Algebraic { .. })));
    }
}
