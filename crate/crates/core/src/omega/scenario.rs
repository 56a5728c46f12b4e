//! Line-oriented scenario files describing tensor systems or published
//! sequence prefixes.

use std::collections::BTreeMap;

use super::channel::{ChannelSide, DimensionChannel, OrbitRep};
use super::TensorSystem;
use crate::error::{Error, Result};
use crate::lmatrix::LMatrix;
use crate::quasipoly::QuasiPoly;
use crate::ring::{parse_rational_list, LaurentPoly, Rational};

/// Identifiers accepted by [`load_builtin`].
pub const BUILTINS: &[&str] = &["c7", "z3z3", "s10-prefix", "s9-prefix"];

const C7: &str = include_str!("../../data/c7.scn");
const Z3Z3: &str = include_str!("../../data/z3z3.scn");
const S10: &str = include_str!("../../data/s10-prefix.scn");
const S9: &str = include_str!("../../data/s9-prefix.scn");

/// Published terms of a sequence, with the recurrence claimed for them.
#[derive(Clone, Debug, PartialEq)]
pub struct PrefixData {
    pub name: String,
    pub terms: Vec<Rational>,
    pub recurrence: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scenario {
    System(TensorSystem),
    Prefix(PrefixData),
}

impl Scenario {
    pub fn name(&self) -> &str {
        match self {
            Scenario::System(s) => s.name(),
            Scenario::Prefix(p) => &p.name,
        }
    }
}

pub fn load_builtin(id: &str) -> Result<Scenario> {
    let text = match id {
        "c7" => C7,
        "z3z3" => Z3Z3,
        "s10-prefix" => S10,
        "s9-prefix" => S9,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown builtin `{other}`; known: {}",
                BUILTINS.join(", ")
            )))
        }
    };
    parse_scenario(text)
}

/// `builtin:<id>` or a file path.
pub fn load_scenario(source: &str) -> Result<Scenario> {
    if let Some(id) = source.strip_prefix("builtin:") {
        return load_builtin(id);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    parse_scenario(&text)
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Scenario { line, msg: msg.into() }
}

/// Drops a `#` comment that is not inside a quoted literal.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// `key=value` pairs separated by spaces; the last key listed in
/// `greedy` takes the rest of the line.
fn key_values(line: usize, text: &str, greedy: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let eq = rest
            .find('=')
            .ok_or_else(|| err(line, format!("expected key=value, found `{rest}`")))?;
        let key = rest[..eq].trim().to_string();
        if key.contains(' ') {
            return Err(err(line, format!("malformed key `{key}`")));
        }
        let after = &rest[eq + 1..];
        let (value, next) = if greedy.contains(&key.as_str()) {
            (after.trim(), "")
        } else if after.starts_with('[') {
            let close = after
                .find(']')
                .ok_or_else(|| err(line, format!("unterminated list for `{key}`")))?;
            (&after[..=close], &after[close + 1..])
        } else {
            match after.find(' ') {
                Some(sp) => (&after[..sp], &after[sp..]),
                None => (after, ""),
            }
        };
        if out.insert(key.clone(), value.to_string()).is_some() {
            return Err(err(line, format!("duplicate key `{key}`")));
        }
        rest = next.trim();
    }
    Ok(out)
}

fn parse_u64_list(line: usize, text: &str) -> Result<Vec<u64>> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected [..], found `{text}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| err(line, format!("`{s}` is not a nonnegative integer")))
        })
        .collect()
}

/// `<letter>[i]` or `<letter>[i][j]` followed by `= "<literal>"`.
fn parse_entry(line: usize, text: &str, letter: char, arity: usize) -> Result<(Vec<usize>, String)> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| err(line, format!("expected `{letter}[..] = \"...\"`")))?;
    let lhs = lhs.trim();
    let mut idx = Vec::new();
    let mut rest = lhs
        .strip_prefix(letter)
        .ok_or_else(|| err(line, format!("expected an entry of `{letter}`, found `{lhs}`")))?;
    while let Some(r) = rest.strip_prefix('[') {
        let close = r.find(']').ok_or_else(|| err(line, "unterminated index"))?;
        let i: usize = r[..close]
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad index `{}`", &r[..close])))?;
        if i == 0 {
            return Err(err(line, "indices are 1-based"));
        }
        idx.push(i - 1);
        rest = &r[close + 1..];
    }
    if !rest.trim().is_empty() || idx.len() != arity {
        return Err(err(line, format!("malformed entry `{lhs}`")));
    }
    let rhs = rhs.trim();
    let lit = rhs
        .strip_prefix('"')
        .and_then(|r| r.strip_suffix('"'))
        .ok_or_else(|| err(line, "literal must be double-quoted"))?;
    Ok((idx, lit.to_string()))
}

fn parse_natural(line: usize, entry: &str, lit: &str) -> Result<LaurentPoly> {
    let p = LaurentPoly::parse(lit).map_err(|e| err(line, format!("{entry}: {e}")))?;
    if !p.is_natural() {
        return Err(err(line, format!("{entry} = \"{lit}\" is not in N[w, 1/w]")));
    }
    Ok(p)
}

#[derive(Default)]
struct OrbitDraft {
    id: String,
    name: String,
    line: usize,
    channels: BTreeMap<String, (ChannelSide, ChannelSide, [bool; 2])>,
}

enum Section {
    None,
    Orbit,
    Matrix,
    Initial,
    Prefix,
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut system: Option<(String, usize, usize)> = None;
    let mut prefix: Option<(String, usize)> = None;
    let mut terms: Option<Vec<Rational>> = None;
    let mut recurrence: Option<Vec<Rational>> = None;
    let mut orbits: Vec<OrbitDraft> = Vec::new();
    let mut matrix: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    let mut initial: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    let mut section = Section::None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let mut content = body;
        if let Some(rest) = body.strip_prefix('[') {
            if !(body.starts_with("[system]")
                || body.starts_with("[orbit ")
                || body.starts_with("[matrix]")
                || body.starts_with("[initial]")
                || body.starts_with("[prefix]"))
            {
                return Err(err(line, format!("unknown section `{body}`")));
            }
            let close = rest.find(']').ok_or_else(|| err(line, "unterminated section header"))?;
            let header = &rest[..close];
            let tail = rest[close + 1..].trim();
            content = tail;
            match header.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["system"] => {
                    if system.is_some() || prefix.is_some() {
                        return Err(err(line, "duplicate [system] or [prefix] header"));
                    }
                    let kv = key_values(line, tail, &[])?;
                    let name = kv.get("name").ok_or_else(|| err(line, "[system] needs name="))?;
                    let size: usize = kv
                        .get("size")
                        .ok_or_else(|| err(line, "[system] needs size="))?
                        .parse()
                        .map_err(|_| err(line, "size must be a positive integer"))?;
                    if size == 0 {
                        return Err(err(line, "size must be a positive integer"));
                    }
                    system = Some((name.clone(), size, line));
                    section = Section::None;
                    continue;
                }
                ["prefix"] => {
                    if system.is_some() || prefix.is_some() {
                        return Err(err(line, "duplicate [system] or [prefix] header"));
                    }
                    let kv = key_values(line, tail, &[])?;
                    let name = kv.get("name").ok_or_else(|| err(line, "[prefix] needs name="))?;
                    prefix = Some((name.clone(), line));
                    section = Section::Prefix;
                    continue;
                }
                ["orbit", id] => {
                    if system.is_none() {
                        return Err(err(line, "[orbit] before [system]"));
                    }
                    if orbits.iter().any(|o| o.id == *id) {
                        return Err(err(line, format!("duplicate orbit `{id}`")));
                    }
                    let kv = key_values(line, tail, &["name"])?;
                    orbits.push(OrbitDraft {
                        id: id.to_string(),
                        name: kv.get("name").cloned().unwrap_or_else(|| id.to_string()),
                        line,
                        ..Default::default()
                    });
                    section = Section::Orbit;
                    continue;
                }
                ["matrix"] => section = Section::Matrix,
                ["initial"] => section = Section::Initial,
                _ => return Err(err(line, format!("malformed section header `[{header}]`"))),
            }
            if content.is_empty() {
                continue;
            }
        }
        let size = system.as_ref().map(|s| s.1);
        match section {
            Section::None => return Err(err(line, format!("`{content}` outside any section"))),
            Section::Prefix => {
                let kv = key_values(line, content, &[])?;
                for (key, value) in kv {
                    let list = parse_rational_list(&value).map_err(|e| err(line, e.to_string()))?;
                    match key.as_str() {
                        "terms" if terms.is_none() => terms = Some(list),
                        "recurrence" if recurrence.is_none() => recurrence = Some(list),
                        _ => return Err(err(line, format!("unexpected key `{key}`"))),
                    }
                }
            }
            Section::Orbit => {
                let orbit = orbits.last_mut().expect("orbit section has an orbit");
                let mut words = content.splitn(4, ' ');
                if words.next() != Some("channel") {
                    return Err(err(line, format!("expected a channel line, found `{content}`")));
                }
                let name = words.next().ok_or_else(|| err(line, "channel needs a name"))?;
                let dir = match words.next() {
                    Some("forward") => 0,
                    Some("backward") => 1,
                    other => {
                        return Err(err(
                            line,
                            format!("channel direction must be forward or backward, found {other:?}"),
                        ))
                    }
                };
                let kv = key_values(line, words.next().unwrap_or(""), &["tail"])?;
                let mut side = ChannelSide::default();
                for (key, value) in kv {
                    match key.as_str() {
                        "prefix" => side.prefix = parse_u64_list(line, &value)?,
                        "tail" => {
                            side.tail = Some(QuasiPoly::parse(&value).map_err(|e| err(line, e.to_string()))?)
                        }
                        _ => return Err(err(line, format!("unexpected key `{key}`"))),
                    }
                }
                let slot = orbit
                    .channels
                    .entry(name.to_string())
                    .or_insert_with(|| (ChannelSide::default(), ChannelSide::default(), [false; 2]));
                if slot.2[dir] {
                    return Err(err(line, format!("channel `{name}` given twice in one direction")));
                }
                slot.2[dir] = true;
                if dir == 0 {
                    slot.0 = side;
                } else {
                    slot.1 = side;
                }
            }
            Section::Matrix => {
                let (idx, lit) = parse_entry(line, content, 'T', 2)?;
                let s = size.ok_or_else(|| err(line, "[matrix] before [system]"))?;
                if idx[0] >= s || idx[1] >= s {
                    return Err(err(line, format!("T[{}][{}] is outside a {s}x{s} matrix", idx[0] + 1, idx[1] + 1)));
                }
                let entry = format!("T[{}][{}]", idx[0] + 1, idx[1] + 1);
                let p = parse_natural(line, &entry, &lit)?;
                if matrix.insert((idx[0], idx[1]), p).is_some() {
                    return Err(err(line, format!("{entry} given twice")));
                }
            }
            Section::Initial => {
                let (idx, lit) = parse_entry(line, content, 'v', 1)?;
                let s = size.ok_or_else(|| err(line, "[initial] before [system]"))?;
                if idx[0] >= s {
                    return Err(err(line, format!("v[{}] is outside a row of length {s}", idx[0] + 1)));
                }
                let entry = format!("v[{}]", idx[0] + 1);
                let p = parse_natural(line, &entry, &lit)?;
                if initial.insert(idx[0], p).is_some() {
                    return Err(err(line, format!("{entry} given twice")));
                }
            }
        }
    }

    if let Some((name, line)) = prefix {
        let terms = terms.ok_or_else(|| err(line, "prefix dataset needs terms="))?;
        return Ok(Scenario::Prefix(PrefixData {
            name,
            terms,
            recurrence,
        }));
    }
    let (name, size, line) = system.ok_or_else(|| err(1, "missing [system] or [prefix] header"))?;
    if orbits.len() != size {
        return Err(err(line, format!("size={size} but {} orbits declared", orbits.len())));
    }
    if initial.is_empty() {
        return Err(err(line, "missing [initial] row"));
    }
    let mut reps = Vec::with_capacity(size);
    for o in orbits {
        let channels = o
            .channels
            .into_iter()
            .map(|(n, (f, b, _))| DimensionChannel::new(&n, f, b))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| err(o.line, format!("orbit {}: {e}", o.id)))?;
        reps.push(OrbitRep::new(&o.id, &o.name, channels).map_err(|e| err(o.line, e.to_string()))?);
    }
    let rows = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| matrix.get(&(i, j)).cloned().unwrap_or_else(LaurentPoly::zero))
                .collect()
        })
        .collect();
    let init = (0..size)
        .map(|j| initial.get(&j).cloned().unwrap_or_else(LaurentPoly::zero))
        .collect();
    let t = LMatrix::new(rows).map_err(|e| err(line, e.to_string()))?;
    let sys = TensorSystem::new(&name, reps, t, init).map_err(|e| err(line, e.to_string()))?;
    Ok(Scenario::System(sys))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
[system] name=tiny size=1
[orbit k] name=trivial module
channel dim forward prefix=[1]   tail=quasipoly T=1 start=0 polys=[1]
channel dim backward prefix=[] tail=quasipoly T=1 start=1 polys=[1]
[matrix] T[1][1] = \"1 + w\"
[initial] v[1] = \"1\"
";

    fn system(text: &str) -> TensorSystem {
        match parse_scenario(text).unwrap() {
            Scenario::System(s) => s,
            Scenario::Prefix(_) => panic!("expected a system"),
        }
    }

    #[test]
    fn inline_entries() {
        let sys = system(SMALL);
        assert_eq!(sys.name(), "tiny");
        assert_eq!(sys.orbits()[0].name, "trivial module");
        assert_eq!(sys.matrix().get(0, 0).to_string(), "1 + w");
    }

    #[test]
    fn round_trip() {
        for id in ["c7", "z3z3"] {
            let Scenario::System(sys) = load_builtin(id).unwrap() else {
                panic!("{id} is a system");
            };
            assert_eq!(system(&sys.to_scenario()), sys);
        }
        assert_eq!(system(&system(SMALL).to_scenario()), system(SMALL));
    }

    #[test]
    fn cancelling_literal_is_zero() {
        let text = SMALL.replace("\"1 + w\"", "\"w - w\"");
        assert!(system(&text).matrix().get(0, 0).is_zero());
    }

    #[test]
    fn negative_literal_names_entry() {
        let text = SMALL.replace("\"1 + w\"", "\"0 - w\"");
        match parse_scenario(&text).unwrap_err() {
            Error::Scenario { line, msg } => {
                assert_eq!(line, 5);
                assert!(msg.contains("T[1][1]"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = SMALL.replace("[matrix] T[1][1]", "[matrix] T[2][1]");
        assert!(matches!(parse_scenario(&text), Err(Error::Scenario { line: 5, .. })));
        let text = SMALL.replace("channel dim forward", "channel dim sideways");
        assert!(matches!(parse_scenario(&text), Err(Error::Scenario { line: 3, .. })));
        let text = SMALL.replace("size=1", "size=2");
        assert!(matches!(parse_scenario(&text), Err(Error::Scenario { line: 1, .. })));
        let text = format!("{SMALL}[bogus]\n");
        assert!(matches!(parse_scenario(&text), Err(Error::Scenario { line: 7, .. })));
    }

    #[test]
    fn prefix_builtins() {
        let Scenario::Prefix(p) = load_builtin("s10-prefix").unwrap() else {
            panic!("prefix dataset expected");
        };
        assert_eq!(p.terms.len(), 6);
        assert!(p.recurrence.is_some());
        assert!(load_builtin("nope").is_err());
    }
}
