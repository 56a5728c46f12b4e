//! Functor channels `e -> dim F(w^e N)` attached to an orbit representative.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::quasipoly::QuasiPoly;
use crate::ring::{is_natural, Rational};

/// One direction of a channel: explicit values followed by an optional
/// quasipolynomial tail in the same index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChannelSide {
    pub prefix: Vec<u64>,
    pub tail: Option<QuasiPoly>,
}

/// Values of a channel at `w^n N` for `n >= 0` (forward) and at `w^-n N`
/// for `n >= 1` (backward). Backward prefixes start at `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionChannel {
    name: String,
    forward: ChannelSide,
    backward: ChannelSide,
}

/// How many tail values past the prefix are checked for being natural.
const TAIL_CHECK: usize = 32;

impl ChannelSide {
    pub fn new(prefix: Vec<u64>, tail: Option<QuasiPoly>) -> Self {
        Self { prefix, tail }
    }

    fn first_index(backward: bool) -> usize {
        usize::from(backward)
    }

    fn tail_value(tail: &QuasiPoly, n: usize) -> Result<Option<u64>> {
        if n < tail.start() {
            return Ok(None);
        }
        let v = tail.eval(n)?;
        natural(&v).map(Some).ok_or_else(|| {
            Error::Positivity(format!("channel tail takes the value {v} at {n}"))
        })
    }

    fn value(&self, n: usize, backward: bool) -> Result<Option<u64>> {
        let k = n - Self::first_index(backward);
        if let Some(&v) = self.prefix.get(k) {
            return Ok(Some(v));
        }
        match &self.tail {
            Some(t) => Self::tail_value(t, n),
            None => Ok(None),
        }
    }

    fn validate(&self, backward: bool) -> Result<()> {
        let Some(tail) = &self.tail else {
            return Ok(());
        };
        let first = Self::first_index(backward);
        let end = first + self.prefix.len() + TAIL_CHECK;
        for n in tail.start().max(first)..end {
            let tv = Self::tail_value(tail, n)?.expect("n is past the tail start");
            if let Some(&pv) = self.prefix.get(n - first) {
                if pv != tv {
                    return Err(Error::Integrity(format!(
                        "prefix value {pv} and tail value {tv} disagree at {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn natural(v: &Rational) -> Option<u64> {
    if is_natural(v) {
        v.to_integer().to_u64()
    } else {
        None
    }
}

impl DimensionChannel {
    pub fn new(name: &str, forward: ChannelSide, backward: ChannelSide) -> Result<Self> {
        forward.validate(false)?;
        backward.validate(true)?;
        Ok(Self {
            name: name.to_string(),
            forward,
            backward,
        })
    }

    pub fn from_prefixes(name: &str, forward: Vec<u64>, backward: Vec<u64>) -> Self {
        Self {
            name: name.to_string(),
            forward: ChannelSide::new(forward, None),
            backward: ChannelSide::new(backward, None),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn forward(&self) -> &ChannelSide {
        &self.forward
    }

    pub fn backward(&self) -> &ChannelSide {
        &self.backward
    }

    pub fn with_forward_tail(mut self, tail: QuasiPoly) -> Result<Self> {
        self.forward.tail = Some(tail);
        self.forward.validate(false)?;
        Ok(self)
    }

    pub fn with_backward_tail(mut self, tail: QuasiPoly) -> Result<Self> {
        self.backward.tail = Some(tail);
        self.backward.validate(true)?;
        Ok(self)
    }

    /// Value at `w^e`, or `None` when neither prefix nor tail covers `e`.
    pub fn value(&self, e: i64) -> Result<Option<u64>> {
        if e >= 0 {
            self.forward.value(e as usize, false)
        } else {
            self.backward.value((-e) as usize, true)
        }
    }

    /// Values at `w^lo .. w^hi` inclusive, `None` where uncovered.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<Option<u64>>> {
        (lo..=hi).map(|e| self.value(e)).collect()
    }

    /// Scenario line for one direction.
    pub fn line(&self, backward: bool) -> String {
        let (side, label) = if backward {
            (&self.backward, "backward")
        } else {
            (&self.forward, "forward")
        };
        let vals: Vec<String> = side.prefix.iter().map(u64::to_string).collect();
        let mut out = format!("channel {} {label} prefix=[{}]", self.name, vals.join(","));
        if let Some(t) = &side.tail {
            out.push_str(&format!(" tail={t}"));
        }
        out
    }
}

impl fmt::Display for DimensionChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.line(false))?;
        write!(f, "{}", self.line(true))
    }
}

/// Representative of an `w`-orbit of indecomposables with its channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRep {
    pub id: String,
    pub name: String,
    pub channels: BTreeMap<String, DimensionChannel>,
}

impl OrbitRep {
    /// Requires a `dim` channel with a positive value at `w^0`.
    pub fn new(id: &str, name: &str, channels: Vec<DimensionChannel>) -> Result<Self> {
        let channels: BTreeMap<String, DimensionChannel> =
            channels.into_iter().map(|c| (c.name.clone(), c)).collect();
        let dim = channels
            .get("dim")
            .ok_or_else(|| Error::MissingChannel {
                orbit: id.to_string(),
                channel: "dim".into(),
            })?;
        match dim.value(0)? {
            Some(v) if v > 0 => {}
            _ => {
                return Err(Error::Integrity(format!(
                    "orbit {id} needs a positive dimension at w^0"
                )))
            }
        }
        Ok(Self {
            id: id.to_string(),
            name: name.to_string(),
            channels,
        })
    }

    pub fn channel(&self, name: &str) -> Result<&DimensionChannel> {
        self.channels.get(name).ok_or_else(|| Error::MissingChannel {
            orbit: self.id.clone(),
            channel: name.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating() -> DimensionChannel {
        DimensionChannel::new(
            "dim",
            ChannelSide::new(vec![2, 5], Some(QuasiPoly::periodic(&[2, 5], 0).unwrap())),
            ChannelSide::new(vec![5], Some(QuasiPoly::periodic(&[2, 5], 0).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn values_in_both_directions() {
        let c = alternating();
        let w: Vec<u64> = c.window(-4, 4).unwrap().into_iter().map(Option::unwrap).collect();
        assert_eq!(w, vec![2, 5, 2, 5, 2, 5, 2, 5, 2]);
    }

    #[test]
    fn uncovered_exponent() {
        let c = DimensionChannel::from_prefixes("soc", vec![1, 1], vec![1]);
        assert_eq!(c.value(1).unwrap(), Some(1));
        assert_eq!(c.value(2).unwrap(), None);
        assert_eq!(c.value(-2).unwrap(), None);
    }

    #[test]
    fn disagreeing_tail_is_rejected() {
        let r = DimensionChannel::from_prefixes("dim", vec![2, 4], vec![])
            .with_forward_tail(QuasiPoly::periodic(&[2, 5], 0).unwrap());
        assert!(matches!(r, Err(Error::Integrity(_))));
    }

    #[test]
    fn negative_tail_is_rejected() {
        let r = DimensionChannel::from_prefixes("dim", vec![1], vec![])
            .with_forward_tail(QuasiPoly::periodic(&[1, -1], 0).unwrap());
        assert!(matches!(r, Err(Error::Positivity(_))));
    }

    #[test]
    fn orbit_requires_dim() {
        let soc = DimensionChannel::from_prefixes("soc", vec![1], vec![]);
        assert!(matches!(
            OrbitRep::new("a", "A", vec![soc]),
            Err(Error::MissingChannel { .. })
        ));
        let zero = DimensionChannel::from_prefixes("dim", vec![0], vec![]);
        assert!(OrbitRep::new("a", "A", vec![zero]).is_err());
    }

    #[test]
    fn scenario_lines() {
        let c = alternating();
        assert_eq!(
            c.line(false),
            "channel dim forward prefix=[2,5] tail=quasipoly T=2 start=0 polys=[2;5]"
        );
    }
}
