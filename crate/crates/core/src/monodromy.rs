//! Factorizations of the full twist and the Hurwitz action on them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::braid::{are_equal, delta_squared, BraidWord};
use crate::error::{Error, ParseError, Result};
use crate::garside::{left_normal_form, NormalForm};
use crate::word::Letter;

/// An ordered list of braids on a common number of strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    strands: usize,
    factors: Vec<BraidWord>,
}

impl Factorization {
    pub fn new(strands: usize, factors: Vec<BraidWord>) -> Result<Factorization> {
        if factors.is_empty() {
            return Err(ParseError::Format("a factorization needs at least one factor".into()).into());
        }
        if let Some(f) = factors.iter().find(|f| f.strands() != strands) {
            return Err(Error::StrandMismatch(strands, f.strands()));
        }
        Ok(Factorization { strands, factors })
    }

    /// Parse `fact <n> <count>` followed by one braid word per line. An
    /// empty line or a lone `1` is the identity factor.
    pub fn parse(text: &str) -> Result<Factorization> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (lno, header) = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => break (i + 1, l.trim()),
                None => return Err(ParseError::Format("empty factorization".into()).into()),
            }
        };
        let err = |line: usize, msg: String| Error::from(ParseError::Line { line, msg });
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "fact" {
            return Err(err(lno, "expected `fact <n> <count>`".into()));
        }
        let n: usize = toks[1].parse().map_err(|_| err(lno, format!("bad strand count `{}`", toks[1])))?;
        let count: usize = toks[2].parse().map_err(|_| err(lno, format!("bad count `{}`", toks[2])))?;
        let mut factors = Vec::with_capacity(count);
        for (i, line) in lines.take(count) {
            let line = line.trim();
            let w = if line == "1" { "" } else { line };
            factors.push(BraidWord::parse(n, w).map_err(|e| err(i + 1, e.to_string()))?);
        }
        if factors.len() != count {
            return Err(ParseError::Format(format!("expected {count} factors, found {}", factors.len())).into());
        }
        Factorization::new(n, factors)
    }

    /// Each braid letter as its own factor.
    pub fn from_letters(b: &BraidWord) -> Result<Factorization> {
        let n = b.strands();
        Factorization::new(n, b.letters().iter().map(|&l| BraidWord::new(n, [l]).expect("in range")).collect())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[BraidWord] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> BraidWord {
        self.factors
            .iter()
            .fold(BraidWord::identity(self.strands), |acc, f| acc.compose(f).expect("same strands"))
    }

    /// Multiset of (cycle type, exponent sum) over the factors, which every
    /// Hurwitz move preserves.
    pub fn invariant_multiset(&self) -> BTreeMap<(Vec<usize>, i64), usize> {
        let mut m = BTreeMap::new();
        for f in &self.factors {
            *m.entry((f.permutation().cycle_type(), f.exponent_sum())).or_insert(0) += 1;
        }
        m
    }

    /// Canonical key made of the left normal form of each factor, so two
    /// factorizations get the same key iff they agree factor by factor.
    pub fn canonical_state(&self) -> CanonicalState {
        CanonicalState(self.factors.iter().map(left_normal_form).collect())
    }

    /// Conjugate every factor by `b`. Not a Hurwitz move; an optional
    /// normalization.
    pub fn conjugate_all(&self, b: &BraidWord) -> Result<Factorization> {
        let factors = self.factors.iter().map(|f| f.conjugate_by(b)).collect::<Result<_>>()?;
        Factorization::new(self.strands, factors)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fact {} {}", self.strands, self.factors.len())?;
        for w in &self.factors {
            if w.is_empty() {
                writeln!(f, "1")?;
            } else {
                writeln!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

/// Normal forms of the factors, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalState(Vec<NormalForm>);

impl fmt::Display for CanonicalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, nf) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{nf}")?;
        }
        Ok(())
    }
}

/// Whether the ordered product of the factors is the full twist.
pub fn is_delta2_factorization(f: &Factorization) -> Result<bool> {
    if f.strands < 2 {
        return Ok(false);
    }
    let d = delta_squared(f.strands)?;
    let p = f.product();
    if p.exponent_sum() != d.exponent_sum() {
        return Ok(false);
    }
    are_equal(&p, &d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Positive,
    Negative,
}

/// Positive: `(a, b) -> (a b a^-1, a)`. Negative: `(a, b) -> (b, b^-1 a b)`.
/// `k` is the 1-based position of the first factor of the pair.
pub fn hurwitz_move(f: &Factorization, k: usize, dir: Direction) -> Result<Factorization> {
    Ok(move_with_forms(f, k, dir)?.0)
}

/// Shorter of `w` and its normal-form word, together with the normal form.
fn shortened(w: BraidWord) -> (BraidWord, NormalForm) {
    let nf = left_normal_form(&w);
    let c = nf.to_braid();
    (if c.len() < w.len() { c } else { w }, nf)
}

/// The move, plus the normal forms of the two new factors.
fn move_with_forms(f: &Factorization, k: usize, dir: Direction) -> Result<(Factorization, [NormalForm; 2])> {
    if k == 0 || k >= f.len() {
        return Err(Error::MoveOutOfRange { index: k, len: f.len() });
    }
    let (a, b) = (&f.factors[k - 1], &f.factors[k]);
    let (x, y) = match dir {
        Direction::Positive => (b.conjugate_by(&a.inverse())?, a.clone()),
        Direction::Negative => (b.clone(), a.conjugate_by(b)?),
    };
    let ((x, nx), (y, ny)) = (shortened(x), shortened(y));
    let mut factors = f.factors.clone();
    factors[k - 1] = x;
    factors[k] = y;
    Ok((Factorization { strands: f.strands, factors }, [nx, ny]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitBudgets {
    pub max_states: usize,
    /// Longest factor word kept during a search.
    pub max_factor_length: usize,
    /// Worker threads for expanding a level; results do not depend on it.
    pub threads: usize,
}

impl Default for OrbitBudgets {
    fn default() -> Self {
        OrbitBudgets { max_states: 10_000, max_factor_length: 256, threads: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub states: BTreeSet<CanonicalState>,
    pub truncated: bool,
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidPresentation(format!("thread pool: {e}")))
}

type Keyed = (CanonicalState, Factorization);

/// All moves of one factorization that stay within the length budget, in a
/// fixed order. `None` marks a neighbour dropped by the budget.
fn neighbours((state, f): &Keyed, b: &OrbitBudgets) -> Vec<Option<Keyed>> {
    let mut out = Vec::with_capacity(2 * f.len());
    for k in 1..f.len() {
        for dir in [Direction::Positive, Direction::Negative] {
            let (g, [nx, ny]) = move_with_forms(f, k, dir).expect("k in range");
            let ok = g.factors[k - 1].len() <= b.max_factor_length && g.factors[k].len() <= b.max_factor_length;
            out.push(ok.then(|| {
                let mut s = state.clone();
                s.0[k - 1] = nx;
                s.0[k] = ny;
                (s, g)
            }));
        }
    }
    out
}

struct Frontier {
    seen: HashMap<CanonicalState, usize>,
    level: Vec<Keyed>,
    depth: usize,
    truncated: bool,
}

impl Frontier {
    fn start(f: &Factorization) -> Frontier {
        let s = f.canonical_state();
        Frontier { seen: HashMap::from([(s.clone(), 0)]), level: vec![(s, f.clone())], depth: 0, truncated: false }
    }

    /// Expand one level. Neighbours are computed in parallel and inserted
    /// sequentially in frontier order, so the outcome is thread-independent.
    fn step(&mut self, b: &OrbitBudgets, pool: &rayon::ThreadPool) -> Vec<CanonicalState> {
        let expanded: Vec<Vec<Option<Keyed>>> =
            pool.install(|| self.level.par_iter().map(|x| neighbours(x, b)).collect());
        let mut next = Vec::new();
        let mut added = Vec::new();
        self.depth += 1;
        'outer: for list in expanded {
            for item in list {
                let Some((s, g)) = item else {
                    self.truncated = true;
                    continue;
                };
                if self.seen.contains_key(&s) {
                    continue;
                }
                if self.seen.len() >= b.max_states {
                    self.truncated = true;
                    break 'outer;
                }
                self.seen.insert(s.clone(), self.depth);
                added.push(s.clone());
                next.push((s, g));
            }
        }
        self.level = next;
        added
    }
}

/// Breadth-first exploration of the Hurwitz orbit of `f`.
pub fn hurwitz_orbit(f: &Factorization, budgets: OrbitBudgets) -> Result<Orbit> {
    let pool = pool(budgets.threads)?;
    let mut fr = Frontier::start(f);
    while !fr.level.is_empty() {
        fr.step(&budgets, &pool);
    }
    Ok(Orbit { states: fr.seen.into_keys().collect(), truncated: fr.truncated })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Connected by `moves` Hurwitz moves.
    Yes { moves: usize },
    Unknown { reason: String },
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::Yes { moves } => write!(f, "yes moves={moves}"),
            Equivalence::Unknown { reason } => write!(f, "unknown: {reason}"),
        }
    }
}

/// Semi-decide Hurwitz equivalence by growing both orbits until they meet.
pub fn are_hurwitz_equivalent(f1: &Factorization, f2: &Factorization, budgets: OrbitBudgets) -> Result<Equivalence> {
    let unknown = |reason: String| Ok(Equivalence::Unknown { reason });
    if f1.strands != f2.strands || f1.len() != f2.len() {
        return unknown(format!(
            "shape mismatch: {} strands x {} factors vs {} strands x {} factors",
            f1.strands,
            f1.len(),
            f2.strands,
            f2.len()
        ));
    }
    if f1.invariant_multiset() != f2.invariant_multiset() {
        return unknown("invariant mismatch: factor (cycle type, exponent sum) multisets differ".into());
    }
    // Zero or one move is checked exactly, whatever the factor lengths.
    let s2 = f2.canonical_state();
    if f1.canonical_state() == s2 {
        return Ok(Equivalence::Yes { moves: 0 });
    }
    for k in 1..f1.len() {
        for dir in [Direction::Positive, Direction::Negative] {
            if hurwitz_move(f1, k, dir)?.canonical_state() == s2 {
                return Ok(Equivalence::Yes { moves: 1 });
            }
        }
    }
    let pool = pool(budgets.threads)?;
    if f1.factors.iter().chain(&f2.factors).any(|w| w.len() > budgets.max_factor_length) {
        return unknown("budget: a starting factor exceeds the length budget".into());
    }
    let (mut a, mut b) = (Frontier::start(f1), Frontier::start(f2));
    loop {
        let a_done = a.level.is_empty();
        let b_done = b.level.is_empty();
        if a_done && b_done {
            break;
        }
        let grow_a = !a_done && (b_done || a.seen.len() <= b.seen.len());
        let (this, other) = if grow_a { (&mut a, &b) } else { (&mut b, &a) };
        let added = this.step(&budgets, &pool);
        let best = added
            .iter()
            .filter_map(|s| other.seen.get(s).map(|d| this.depth + d))
            .min();
        if let Some(moves) = best {
            return Ok(Equivalence::Yes { moves });
        }
    }
    if a.truncated || b.truncated {
        unknown("budget exhausted before the orbits met".into())
    } else {
        unknown("orbits are finite and disjoint within the length budget".into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorStatus {
    /// Equal to `w^-1 s_1 w` for the supplied `w`.
    Certified,
    /// Transposition with exponent sum 1, but no certificate was given.
    Plausible,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub factors: Vec<FactorStatus>,
}

impl CertificateReport {
    pub fn all_certified(&self) -> bool {
        self.factors.iter().all(|s| *s == FactorStatus::Certified)
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.factors.iter().enumerate() {
            match s {
                FactorStatus::Certified => writeln!(f, "factor {} certified", i + 1)?,
                FactorStatus::Plausible => writeln!(f, "factor {} plausible", i + 1)?,
                FactorStatus::Failed(why) => writeln!(f, "factor {} failed: {why}", i + 1)?,
            }
        }
        Ok(())
    }
}

/// Check which factors are half-twists. `certificates[i]`, when present,
/// is a conjugator `w` with factor `i` equal to `w^-1 s_1 w`. A factor that
/// is literally `s_1` needs no certificate.
pub fn half_twist_certificate(f: &Factorization, certificates: &[Option<BraidWord>]) -> Result<CertificateReport> {
    let n = f.strands;
    let mut out = Vec::with_capacity(f.len());
    for (i, factor) in f.factors.iter().enumerate() {
        if factor.exponent_sum() != 1 {
            out.push(FactorStatus::Failed(format!("exponent sum {} is not 1", factor.exponent_sum())));
            continue;
        }
        if !factor.permutation().is_transposition() {
            out.push(FactorStatus::Failed(format!("permutation {} is not a transposition", factor.permutation())));
            continue;
        }
        let w = match certificates.get(i).cloned().flatten() {
            Some(w) => w,
            None if n >= 2 && factor.letters() == [Letter::pos(1)] => BraidWord::identity(n),
            None => {
                out.push(FactorStatus::Plausible);
                continue;
            }
        };
        let s1 = BraidWord::generator(n, 1, false)?;
        if are_equal(factor, &s1.conjugate_by(&w)?)? {
            out.push(FactorStatus::Certified);
        } else {
            out.push(FactorStatus::Failed(format!("not equal to the conjugate of s1 by {w}")));
        }
    }
    Ok(CertificateReport { factors: out })
}
