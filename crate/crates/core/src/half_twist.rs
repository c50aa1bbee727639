//! Half-twists along combinatorial arcs.
//!
//! Marked points sit at `(1, 0), ..., (n, 0)`. An [`ArcPath`] from `i` to `j`
//! is x-monotone and passes each intermediate point `k` either above or
//! below it; its piecewise-linear realization is the polyline through
//! `(i, 0)`, `(k, +1)` or `(k, -1)`, ..., `(j, 0)`.

use std::fmt;

use crate::braid::BraidWord;
use crate::error::{Error, ParseError, Result};
use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    fn height(self) -> i32 {
        match self {
            Side::Above => 1,
            Side::Below => -1,
        }
    }

    fn token(self) -> char {
        match self {
            Side::Above => 'A',
            Side::Below => 'B',
        }
    }
}

/// An x-monotone simple arc between marked points `left < right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcPath {
    strands: usize,
    left: usize,
    right: usize,
    flags: Vec<Side>,
}

impl ArcPath {
    pub fn new(strands: usize, left: usize, right: usize, flags: Vec<Side>) -> Result<ArcPath> {
        if left < 1 || right > strands || left >= right {
            return Err(Error::InvalidArc(format!(
                "endpoints {left}, {right} must satisfy 1 <= i < j <= {strands}"
            )));
        }
        if flags.len() != right - left - 1 {
            return Err(Error::InvalidArc(format!(
                "arc {left}..{right} needs {} flags, got {}",
                right - left - 1,
                flags.len()
            )));
        }
        Ok(ArcPath { strands, left, right, flags })
    }

    /// The frame arc between `k` and `k + 1`.
    pub fn frame(strands: usize, k: usize) -> Result<ArcPath> {
        ArcPath::new(strands, k, k + 1, Vec::new())
    }

    /// The arc from `i` to `j` passing below every point in between.
    pub fn band(strands: usize, left: usize, right: usize) -> Result<ArcPath> {
        let flags = vec![Side::Below; right.saturating_sub(left + 1)];
        ArcPath::new(strands, left, right, flags)
    }

    /// Parse `arc <n> <i> <j> [A|B]*`.
    pub fn parse(text: &str) -> Result<ArcPath> {
        let mut toks = text.split_whitespace();
        if toks.next() != Some("arc") {
            return Err(ParseError::Format(format!("expected `arc <n> <i> <j> [A|B]*`, got `{text}`")).into());
        }
        let mut num = |what: &str| -> Result<usize> {
            toks.next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ParseError::Format(format!("arc: missing or bad {what}")).into())
        };
        let (n, i, j) = (num("strand count")?, num("left endpoint")?, num("right endpoint")?);
        let flags = toks
            .map(|t| match t {
                "A" => Ok(Side::Above),
                "B" => Ok(Side::Below),
                other => Err(ParseError::Format(format!("arc: bad flag `{other}`"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ArcPath::new(n, i, j, flags)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn flags(&self) -> &[Side] {
        &self.flags
    }

    /// Side of the intermediate point `k`, if `left < k < right`.
    pub fn side_at(&self, k: usize) -> Option<Side> {
        if k > self.left && k < self.right {
            Some(self.flags[k - self.left - 1])
        } else {
            None
        }
    }

    /// Height of the polyline at integer abscissa `x` within `[left, right]`.
    fn height(&self, x: usize) -> i32 {
        self.side_at(x).map_or(0, Side::height)
    }

    /// Mirror image under `k -> n + 1 - k` (keeps above/below).
    pub fn reflected(&self) -> ArcPath {
        let n = self.strands;
        let mut flags = self.flags.clone();
        flags.reverse();
        ArcPath { strands: n, left: n + 1 - self.right, right: n + 1 - self.left, flags }
    }
}

impl fmt::Display for ArcPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arc {} {} {}", self.strands, self.left, self.right)?;
        for s in &self.flags {
            write!(f, " {}", s.token())?;
        }
        Ok(())
    }
}

/// `H(σ)` together with its braid word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfTwist {
    pub path: ArcPath,
    pub word: BraidWord,
}

impl HalfTwist {
    pub fn new(path: ArcPath) -> HalfTwist {
        let word = half_twist_word(&path);
        HalfTwist { path, word }
    }
}

/// Braid word of the half-twist along `p`.
///
/// Built from the frame twist `s_i` by sliding the right endpoint one point
/// at a time: `H(i..k+1) = s_k^e H(i..k) s_k^-e` with `e = +1` when the arc
/// passes below `k` and `e = -1` when it passes above.
pub fn half_twist_word(p: &ArcPath) -> BraidWord {
    let mut letters = vec![Letter::pos(p.left)];
    for k in (p.left + 1)..p.right {
        let below = p.flags[k - p.left - 1] == Side::Below;
        let mut next = Vec::with_capacity(letters.len() + 2);
        next.push(Letter::new(k, !below));
        next.extend_from_slice(&letters);
        next.push(Letter::new(k, below));
        letters = next;
    }
    BraidWord::new(p.strands, letters).expect("arc indices are in range")
}

/// The frame `H_1, ..., H_{n-1}` of straight arcs between neighbours.
pub fn frame(n: usize) -> Result<Vec<HalfTwist>> {
    if n < 2 {
        return Err(Error::TooFewStrands { got: n, min: 2 });
    }
    Ok((1..n).map(|k| HalfTwist::new(ArcPath::frame(n, k).expect("valid"))).collect())
}

/// All arcs `(i, j)` passing below every intermediate point.
pub fn band_family(n: usize) -> Vec<ArcPath> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(ArcPath::band(n, i, j).expect("valid"));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    Equal,
    Disjoint,
    Adjacent,
    Transversal,
    Other,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Equal => "equal",
            PairClass::Disjoint => "disjoint",
            PairClass::Adjacent => "adjacent",
            PairClass::Transversal => "transversal",
            PairClass::Other => "other",
        })
    }
}

/// Intersection data of two polylines, shared endpoints excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub shared_endpoints: usize,
    pub crossings: usize,
    /// Touching without crossing, or overlapping segments.
    pub degenerate: bool,
}

/// Intersect the polyline realizations of two arcs.
///
/// Both polylines are graphs over their x-ranges, so on the common range the
/// difference of heights is piecewise linear with breakpoints at integers.
/// Endpoints lie at height 0 while interior vertices lie at height ±1, so an
/// endpoint of one arc can only meet the other arc at a shared endpoint.
pub fn intersect(p1: &ArcPath, p2: &ArcPath) -> Intersection {
    let ends1 = [p1.left, p1.right];
    let shared_endpoints = [p2.left, p2.right].iter().filter(|e| ends1.contains(e)).count();
    let lo = p1.left.max(p2.left);
    let hi = p1.right.min(p2.right);
    let mut crossings = 0;
    let mut degenerate = false;
    if lo <= hi {
        let diff: Vec<i32> = (lo..=hi).map(|x| p1.height(x) - p2.height(x)).collect();
        let last = diff.len() - 1;
        for (idx, &d) in diff.iter().enumerate() {
            if idx < last {
                let e = diff[idx + 1];
                if d == 0 && e == 0 {
                    degenerate = true;
                } else if d * e < 0 {
                    crossings += 1;
                }
            }
            // a zero strictly inside the common range is a vertex meeting
            if d == 0 && idx > 0 && idx < last {
                let (a, b) = (diff[idx - 1], diff[idx + 1]);
                if a * b < 0 {
                    crossings += 1;
                } else {
                    degenerate = true;
                }
            }
        }
    }
    Intersection { shared_endpoints, crossings, degenerate }
}

/// Classify a pair of half-twists by how their arc representatives meet.
pub fn classify_pair(p1: &ArcPath, p2: &ArcPath) -> Result<PairClass> {
    if p1.strands != p2.strands {
        return Err(Error::StrandMismatch(p1.strands, p2.strands));
    }
    if p1 == p2 {
        return Ok(PairClass::Equal);
    }
    let x = intersect(p1, p2);
    Ok(match (x.shared_endpoints, x.crossings, x.degenerate) {
        (0, 0, false) => PairClass::Disjoint,
        (1, 0, false) => PairClass::Adjacent,
        (0, 1, false) => PairClass::Transversal,
        _ => PairClass::Other,
    })
}

/// `b^-1 H b`.
pub fn conjugate_twist(h: &HalfTwist, b: &BraidWord) -> Result<BraidWord> {
    h.word.conjugate_by(b)
}
