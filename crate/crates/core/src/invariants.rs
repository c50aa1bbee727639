//! Layered series `1 = A_0 < ... < A_m < G` with `G/A_m = S_n` and
//! abelian layers `(Z_t + Z_s + Z^r)^q`, flattened to integer tuples.
//!
//! A cyclic order of 0 stands for an infinite cyclic factor and an order of
//! 1 for a trivial one, so `Z` alone is `(1, 1, 1, 1)` or `(0, 1, 0, 1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

/// `(Z_t + Z_s + Z^r)^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LayerQuotient {
    pub t: u64,
    pub s: u64,
    pub r: u64,
    pub q: u64,
}

impl LayerQuotient {
    pub const fn new(t: u64, s: u64, r: u64, q: u64) -> LayerQuotient {
        LayerQuotient { t, s, r, q }
    }

    /// `Z^q`, written `(1, 1, 1, q)`.
    pub const fn free(q: u64) -> LayerQuotient {
        LayerQuotient::new(1, 1, 1, q)
    }

    pub const fn cyclic(t: u64) -> LayerQuotient {
        LayerQuotient::new(t, 1, 0, 1)
    }

    pub const fn trivial() -> LayerQuotient {
        LayerQuotient::new(1, 1, 0, 0)
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.t, self.s, self.r, self.q]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesDescriptor {
    pub n: u64,
    pub projective: bool,
    /// `A_1/A_0` first.
    pub layers: Vec<LayerQuotient>,
    pub undetermined: bool,
}

impl SeriesDescriptor {
    pub fn new(n: u64, projective: bool, layers: Vec<LayerQuotient>) -> Result<SeriesDescriptor> {
        if n == 0 {
            return Err(Error::InvalidSeries("degree must be at least 1".into()));
        }
        if layers.is_empty() {
            return Err(Error::InvalidSeries("need at least one layer".into()));
        }
        Ok(SeriesDescriptor { n, projective, layers, undetermined: false })
    }

    pub fn undetermined(n: u64, projective: bool) -> SeriesDescriptor {
        SeriesDescriptor { n, projective, layers: Vec::new(), undetermined: true }
    }

    /// Inverse of [`tuple_of`]; the tuple does not record projectivity.
    pub fn from_tuple(t: &InvariantTuple, projective: bool) -> Result<SeriesDescriptor> {
        if t.undetermined {
            return Err(Error::InvalidSeries("undetermined tuple".into()));
        }
        let e = &t.entries;
        if e.len() < 5 || e.len() % 4 != 1 {
            return Err(Error::InvalidSeries(format!("tuple length {} is not 4m+1", e.len())));
        }
        let layers = e[..e.len() - 1].chunks(4).map(|c| LayerQuotient::new(c[0], c[1], c[2], c[3])).collect();
        SeriesDescriptor::new(e[e.len() - 1], projective, layers)
    }

    /// Parse `series n=<N> proj=<0|1> [undetermined]` followed by
    /// `layer t s r q` lines.
    pub fn parse(text: &str) -> Result<SeriesDescriptor> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lno, header) = lines.next().ok_or_else(|| ParseError::Format("empty descriptor".into()))?;
        let err = |line: usize, msg: &str| Error::from(ParseError::Line { line, msg: msg.into() });
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.first() != Some(&"series") || toks.len() < 3 || toks.len() > 4 {
            return Err(err(lno, "expected `series n=<N> proj=<0|1>`"));
        }
        let n = toks[1]
            .strip_prefix("n=")
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(|| err(lno, "bad `n=`"))?;
        let projective = match toks[2] {
            "proj=0" => false,
            "proj=1" => true,
            _ => return Err(err(lno, "expected `proj=0` or `proj=1`")),
        };
        let undetermined = match toks.get(3) {
            None => false,
            Some(&"undetermined") => true,
            Some(_) => return Err(err(lno, "unexpected token after `proj=`")),
        };
        let mut layers = Vec::new();
        for (lno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 || toks[0] != "layer" {
                return Err(err(lno, "expected `layer t s r q`"));
            }
            let v: Vec<u64> = toks[1..]
                .iter()
                .map(|t| t.parse::<u64>().map_err(|_| err(lno, &format!("bad number `{t}`"))))
                .collect::<Result<_>>()?;
            layers.push(LayerQuotient::new(v[0], v[1], v[2], v[3]));
        }
        if undetermined {
            if !layers.is_empty() {
                return Err(Error::InvalidSeries("undetermined descriptor with layers".into()));
            }
            return Ok(SeriesDescriptor::undetermined(n, projective));
        }
        SeriesDescriptor::new(n, projective, layers)
    }
}

impl fmt::Display for SeriesDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "series n={} proj={}", self.n, u8::from(self.projective))?;
        if self.undetermined {
            write!(f, " undetermined")?;
        }
        writeln!(f)?;
        for l in &self.layers {
            writeln!(f, "layer {} {} {} {}", l.t, l.s, l.r, l.q)?;
        }
        Ok(())
    }
}

/// `(t_1, s_1, r_1, q_1, ..., t_m, s_m, r_m, q_m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantTuple {
    pub entries: Vec<u64>,
    pub undetermined: bool,
}

impl InvariantTuple {
    pub fn undetermined() -> InvariantTuple {
        InvariantTuple { entries: Vec::new(), undetermined: true }
    }
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.undetermined {
            return f.write_str("undetermined");
        }
        let parts: Vec<String> = self.entries.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for InvariantTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<InvariantTuple> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s == "undetermined" {
            return Ok(InvariantTuple::undetermined());
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::from(ParseError::Format(format!("bad tuple entry `{}`", t.trim()))))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() < 5 || entries.len() % 4 != 1 {
            return Err(Error::InvalidSeries(format!("tuple length {} is not 4m+1", entries.len())));
        }
        Ok(InvariantTuple { entries, undetermined: false })
    }
}

pub fn tuple_of(d: &SeriesDescriptor) -> InvariantTuple {
    if d.undetermined {
        return InvariantTuple::undetermined();
    }
    let mut entries: Vec<u64> = d.layers.iter().flat_map(LayerQuotient::entries).collect();
    entries.push(d.n);
    InvariantTuple { entries, undetermined: false }
}

/// Veronese embedding of degree `p`: degree `p^2`.
pub fn veronese_series(p: u64, projective: bool) -> Result<SeriesDescriptor> {
    if p < 3 {
        return Err(Error::InvalidSeries(format!("Veronese degree p = {p} must be at least 3")));
    }
    let n = p * p;
    let first = if p % 2 == 1 { LayerQuotient::cyclic(2) } else { LayerQuotient::trivial() };
    let second = if p.is_multiple_of(3) { LayerQuotient::new(3, 1, 1, n - 1) } else { LayerQuotient::free(n - 1) };
    let third = if projective { LayerQuotient::cyclic(3 * p * (p - 1) / 2) } else { LayerQuotient::free(1) };
    SeriesDescriptor::new(n, projective, vec![first, second, third])
}

/// Rational ruled surface `X_ab`: degree `2ab`.
pub fn rational_ruled_series(a: u64, b: u64, projective: bool) -> Result<SeriesDescriptor> {
    if b < 1 || a < b {
        return Err(Error::InvalidSeries(format!("need a >= b >= 1, got a = {a}, b = {b}")));
    }
    let n = 2 * a * b;
    let (first, second) = if a.is_multiple_of(2) && b.is_multiple_of(2) {
        (LayerQuotient::new(2, 2, 0, 1), LayerQuotient::new(2, a - b, 0, n - 1))
    } else {
        (LayerQuotient::cyclic(2), LayerQuotient::new(2 * (a - b), 1, 0, n - 1))
    };
    let third = if projective { LayerQuotient::cyclic(3 * a * b - a - b) } else { LayerQuotient::free(1) };
    SeriesDescriptor::new(n, projective, vec![first, second, third])
}

/// Complete intersection of degree `n`. Only the affine series is known.
pub fn complete_intersection_series(n: u64, projective: bool) -> Result<SeriesDescriptor> {
    if n < 2 {
        return Err(Error::InvalidSeries(format!("degree n = {n} must be at least 2")));
    }
    if projective {
        return Ok(SeriesDescriptor::undetermined(n, true));
    }
    SeriesDescriptor::new(n, false, vec![LayerQuotient::cyclic(2), LayerQuotient::free(n - 1), LayerQuotient::free(1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Tuples differ, so the surfaces lie in different components.
    Distinguished,
    /// Tuples agree; nothing follows.
    Inconclusive,
    /// At least one tuple is undetermined; nothing follows.
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "distinguished",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Undetermined => "undetermined",
        })
    }
}

pub fn distinguishes(x: &InvariantTuple, y: &InvariantTuple) -> Verdict {
    if x.undetermined || y.undetermined {
        Verdict::Undetermined
    } else if x.entries != y.entries {
        Verdict::Distinguished
    } else {
        Verdict::Inconclusive
    }
}
