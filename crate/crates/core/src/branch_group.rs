//! The class-2 group `G_0` on generators `g_i` and a central involution
//! `tau`, its braid action, and the semidirect product with the braid
//! quotient.
//!
//! Everything is parametrized by an [`IntersectionTable`] saying how the
//! half-twists behind each pair of generators meet and which braid
//! generator twists along which label.

use std::collections::HashMap;
use std::fmt;

use crate::bn_tilde::bt_presentation;
use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, ParseError, Result};
use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Disjoint,
    OrderlyAdjacent,
    NotOrderlyAdjacent,
    Transversal,
}

impl Relation {
    fn code(self) -> &'static str {
        match self {
            Relation::Disjoint => "D",
            Relation::OrderlyAdjacent => "OA",
            Relation::NotOrderlyAdjacent => "NA",
            Relation::Transversal => "T",
        }
    }

    fn from_code(s: &str) -> Option<Relation> {
        Some(match s {
            "D" => Relation::Disjoint,
            "OA" => Relation::OrderlyAdjacent,
            "NA" => Relation::NotOrderlyAdjacent,
            "T" => Relation::Transversal,
            _ => return None,
        })
    }

    fn is_symmetric_kind(self) -> bool {
        matches!(self, Relation::Disjoint | Relation::Transversal)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Labels, pairwise relations, and the map from braid positions to labels.
///
/// Relations are stored per ordered pair of label indices. Disjoint and
/// transversal are symmetric; adjacency carries an orientation, so `(i, j)`
/// and `(j, i)` may differ between orderly and not orderly adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTable {
    labels: Vec<u32>,
    relation: Vec<Vec<Option<Relation>>>,
    twists: Vec<usize>,
    transversal_action: Relation,
}

impl IntersectionTable {
    /// `relation(i, j)` is consulted for ordered pairs of distinct label
    /// indices; `twists[k - 1]` is the label index of braid position `k`.
    pub fn new(
        labels: Vec<u32>,
        pairs: &[(u32, u32, Relation)],
        twists: &[(usize, u32)],
        transversal_action: Relation,
    ) -> Result<IntersectionTable> {
        let bad = |m: String| Err(Error::InvalidTable(m));
        let mut index_of = HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            if index_of.insert(l, i).is_some() {
                return bad(format!("label {l} repeated"));
            }
        }
        if labels.is_empty() {
            return bad("no labels".into());
        }
        if transversal_action == Relation::Transversal {
            return bad("transversal action must be D, OA or NA".into());
        }
        let m = labels.len();
        let mut relation = vec![vec![None; m]; m];
        let mut explicit = vec![vec![false; m]; m];
        for &(a, b, r) in pairs {
            let (Some(&i), Some(&j)) = (index_of.get(&a), index_of.get(&b)) else {
                return bad(format!("pair {a} {b} uses an unknown label"));
            };
            if i == j {
                return bad(format!("pair {a} {a} relates a label to itself"));
            }
            if explicit[i][j] && relation[i][j] != Some(r) {
                return bad(format!("pair {a} {b} given twice"));
            }
            relation[i][j] = Some(r);
            explicit[i][j] = true;
            if !explicit[j][i] {
                relation[j][i] = Some(r);
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let (Some(x), Some(y)) = (relation[i][j], relation[j][i]) else {
                    return bad(format!("pair {} {} missing", labels[i], labels[j]));
                };
                if (x.is_symmetric_kind() || y.is_symmetric_kind()) && x != y {
                    return bad(format!("pair {} {} is {x} one way and {y} the other", labels[i], labels[j]));
                }
            }
        }
        let mut tw = vec![usize::MAX; twists.len()];
        for &(k, l) in twists {
            if k == 0 || k > twists.len() {
                return bad(format!("twist position {k} out of range 1..={}", twists.len()));
            }
            let Some(&i) = index_of.get(&l) else {
                return bad(format!("twist {k} uses unknown label {l}"));
            };
            if tw[k - 1] != usize::MAX {
                return bad(format!("twist position {k} given twice"));
            }
            tw[k - 1] = i;
        }
        Ok(IntersectionTable { labels, relation, twists: tw, transversal_action })
    }

    /// Parse the line format
    ///
    /// ```text
    /// labels 1 2 3
    /// pair 1 2 OA
    /// pair 1 3 D
    /// pair 2 3 NA
    /// twist 1 1
    /// twist 2 2
    /// transversal D
    /// ```
    ///
    /// A `pair a b` line fixes both orders unless `pair b a` also appears.
    /// The `transversal` line is optional and defaults to `D`.
    pub fn parse(text: &str) -> Result<IntersectionTable> {
        let mut labels = None;
        let mut pairs = Vec::new();
        let mut twists = Vec::new();
        let mut transversal = Relation::Disjoint;
        for (lno, line) in text.lines().enumerate() {
            let lno = lno + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::from(ParseError::Line { line: lno, msg: msg.into() });
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<u32>().map_err(|_| err(&format!("bad number `{s}`")));
            match toks[0] {
                "labels" => {
                    labels = Some(toks[1..].iter().map(|t| num(t)).collect::<Result<Vec<_>>>()?);
                }
                "pair" if toks.len() == 4 => {
                    let r = Relation::from_code(toks[3]).ok_or_else(|| err("relation must be D, OA, NA or T"))?;
                    pairs.push((num(toks[1])?, num(toks[2])?, r));
                }
                "twist" if toks.len() == 3 => twists.push((num(toks[1])? as usize, num(toks[2])?)),
                "transversal" if toks.len() == 2 => {
                    transversal = Relation::from_code(toks[1]).ok_or_else(|| err("expected D, OA or NA"))?;
                }
                _ => return Err(err("expected `labels`, `pair`, `twist` or `transversal`")),
            }
        }
        let labels = labels.ok_or_else(|| ParseError::Format("missing `labels` line".into()))?;
        IntersectionTable::new(labels, &pairs, &twists, transversal)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of braid strands acting: one more than the number of twists.
    pub fn strands(&self) -> usize {
        self.twists.len() + 1
    }

    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Relation of the ordered pair of label indices.
    pub fn relation(&self, i: usize, j: usize) -> Relation {
        self.relation[i][j].expect("total on distinct pairs")
    }

    /// `m_ij`: 0 for disjoint pairs, 1 otherwise.
    pub fn commutator_bit(&self, i: usize, j: usize) -> bool {
        i != j && self.relation(i, j) != Relation::Disjoint
    }

    /// Label index twisted by braid position `k` (1-based).
    pub fn twist_label(&self, k: usize) -> Result<usize> {
        self.twists
            .get(k.wrapping_sub(1))
            .copied()
            .ok_or(Error::IndexOutOfRange { index: k, strands: self.strands() })
    }

    pub fn transversal_action(&self) -> Relation {
        self.transversal_action
    }
}

impl fmt::Display for IntersectionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "labels")?;
        for l in &self.labels {
            write!(f, " {l}")?;
        }
        writeln!(f)?;
        let m = self.labels.len();
        for i in 0..m {
            for j in (i + 1)..m {
                writeln!(f, "pair {} {} {}", self.labels[i], self.labels[j], self.relation(i, j))?;
                if self.relation(j, i) != self.relation(i, j) {
                    writeln!(f, "pair {} {} {}", self.labels[j], self.labels[i], self.relation(j, i))?;
                }
            }
        }
        for (k, &i) in self.twists.iter().enumerate() {
            writeln!(f, "twist {} {}", k + 1, self.labels[i])?;
        }
        writeln!(f, "transversal {}", self.transversal_action)
    }
}

/// `g_1^{e_1} ... g_m^{e_m} tau^t` in label order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G0Element {
    pub exponents: Vec<i64>,
    pub tau: bool,
}

impl G0Element {
    pub fn identity(t: &IntersectionTable) -> G0Element {
        G0Element { exponents: vec![0; t.len()], tau: false }
    }

    /// The generator with label index `i`.
    pub fn generator(t: &IntersectionTable, i: usize) -> G0Element {
        let mut e = G0Element::identity(t);
        e.exponents[i] = 1;
        e
    }

    pub fn tau(t: &IntersectionTable) -> G0Element {
        G0Element { exponents: vec![0; t.len()], tau: true }
    }

    pub fn is_identity(&self) -> bool {
        !self.tau && self.exponents.iter().all(|&e| e == 0)
    }

    /// Parse tokens `g<label>`, `g<label>^<int>` and `tau`.
    pub fn parse(t: &IntersectionTable, text: &str) -> Result<G0Element> {
        let mut acc = G0Element::identity(t);
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let factor = if tok == "tau" {
                G0Element::tau(t)
            } else {
                let bad = || ParseError::Token { token: tok.into(), prefix: 'g' };
                let body = tok.strip_prefix('g').ok_or_else(bad)?;
                let (label, exp) = match body.split_once('^') {
                    Some((l, e)) => (l, e.parse::<i64>().map_err(|_| bad())?),
                    None => (body, 1),
                };
                let label: u32 = label.parse().map_err(|_| bad())?;
                let i = t.index_of(label).ok_or_else(bad)?;
                g0_pow(&G0Element::generator(t, i), exp, t)
            };
            acc = g0_mul(&acc, &factor, t)?;
        }
        Ok(acc)
    }

    pub fn display<'a>(&'a self, t: &'a IntersectionTable) -> impl fmt::Display + 'a {
        DisplayG0 { x: self, t }
    }

    fn check(&self, t: &IntersectionTable) -> Result<()> {
        if self.exponents.len() != t.len() {
            return Err(Error::InvalidTable(format!(
                "element has {} exponents but the table has {} labels",
                self.exponents.len(),
                t.len()
            )));
        }
        Ok(())
    }
}

struct DisplayG0<'a> {
    x: &'a G0Element,
    t: &'a IntersectionTable,
}

impl fmt::Display for DisplayG0<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.x.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("g{}", self.t.labels[i])),
                _ => parts.push(format!("g{}^{e}", self.t.labels[i])),
            }
        }
        if self.x.tau {
            parts.push("tau".into());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Product in normal form. Moving each `g_j` of `b` left past each `g_i`
/// of `a` with `i > j` costs `[g_i, g_j]^{a_i b_j}`, which is `tau` to the
/// power `a_i b_j m_ij`.
pub fn g0_mul(a: &G0Element, b: &G0Element, t: &IntersectionTable) -> Result<G0Element> {
    a.check(t)?;
    b.check(t)?;
    let m = t.len();
    let mut tau = a.tau ^ b.tau;
    for i in 0..m {
        if a.exponents[i] & 1 == 0 {
            continue;
        }
        for j in 0..i {
            if b.exponents[j] & 1 == 1 && t.commutator_bit(i, j) {
                tau = !tau;
            }
        }
    }
    let exponents = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
    Ok(G0Element { exponents, tau })
}

pub fn g0_inverse(a: &G0Element, t: &IntersectionTable) -> G0Element {
    let neg = G0Element { exponents: a.exponents.iter().map(|e| -e).collect(), tau: false };
    let prod = g0_mul(a, &neg, t).expect("same table");
    G0Element { exponents: neg.exponents, tau: prod.tau }
}

pub fn g0_pow(a: &G0Element, exp: i64, t: &IntersectionTable) -> G0Element {
    let base = if exp < 0 { g0_inverse(a, t) } else { a.clone() };
    let mut acc = G0Element::identity(t);
    let mut sq = base;
    let mut k = exp.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = g0_mul(&acc, &sq, t).expect("same table");
        }
        sq = g0_mul(&sq, &sq, t).expect("same table");
        k >>= 1;
    }
    acc
}

/// `a b a^-1 b^-1`.
pub fn g0_commutator(a: &G0Element, b: &G0Element, t: &IntersectionTable) -> G0Element {
    let ab = g0_mul(a, b, t).expect("same table");
    let ai = g0_inverse(a, t);
    let bi = g0_inverse(b, t);
    g0_mul(&g0_mul(&ab, &ai, t).expect("same table"), &bi, t).expect("same table")
}

/// Images of the generators under the twist at braid position `k`.
fn letter_images(k: usize, t: &IntersectionTable) -> Result<Vec<G0Element>> {
    let tk = t.twist_label(k)?;
    let gk = G0Element::generator(t, tk);
    let gk_inv = g0_inverse(&gk, t);
    Ok((0..t.len())
        .map(|i| {
            let gi = G0Element::generator(t, i);
            if i == tk {
                return g0_mul(&g0_inverse(&gi, t), &G0Element::tau(t), t).expect("same table");
            }
            let rel = match t.relation(i, tk) {
                Relation::Transversal => t.transversal_action(),
                r => r,
            };
            match rel {
                Relation::Disjoint => gi,
                Relation::NotOrderlyAdjacent => g0_mul(&gi, &gk_inv, t).expect("same table"),
                Relation::OrderlyAdjacent => g0_mul(&gk, &gi, t).expect("same table"),
                Relation::Transversal => unreachable!("transversal action is never T"),
            }
        })
        .collect())
}

/// Apply the homomorphism fixing `tau` and sending `g_i` to `images[i]`.
fn apply_images(x: &G0Element, images: &[G0Element], t: &IntersectionTable) -> G0Element {
    let mut acc = if x.tau { G0Element::tau(t) } else { G0Element::identity(t) };
    for (i, &e) in x.exponents.iter().enumerate() {
        if e != 0 {
            acc = g0_mul(&acc, &g0_pow(&images[i], e, t), t).expect("same table");
        }
    }
    acc
}

/// Generator images of the inverse of the twist at position `k`.
///
/// The linear part of each twist is an involution, so the inverse sends
/// `g_i` to the forward image of `g_i`'s linear image with `tau` fixed up.
fn inverse_letter_images(k: usize, t: &IntersectionTable) -> Result<Vec<G0Element>> {
    let fwd = letter_images(k, t)?;
    Ok((0..t.len())
        .map(|i| {
            let lin = G0Element { exponents: fwd[i].exponents.clone(), tau: false };
            let back = apply_images(&lin, &fwd, t);
            debug_assert_eq!(back.exponents, G0Element::generator(t, i).exponents);
            G0Element { exponents: lin.exponents, tau: back.tau }
        })
        .collect())
}

/// `g` acted on by one signed braid letter.
pub fn braid_action(g: &G0Element, l: Letter, t: &IntersectionTable) -> Result<G0Element> {
    g.check(t)?;
    let images = if l.is_inverse() { inverse_letter_images(l.index(), t)? } else { letter_images(l.index(), t)? };
    Ok(apply_images(g, &images, t))
}

/// `g` acted on by a braid word, letters applied left to right.
pub fn braid_word_action(g: &G0Element, b: &BraidWord, t: &IntersectionTable) -> Result<G0Element> {
    if b.strands() != t.strands() {
        return Err(Error::StrandMismatch(t.strands(), b.strands()));
    }
    b.letters().iter().try_fold(g.clone(), |x, &l| braid_action(&x, l, t))
}

/// A pair `(b, g)` in the semidirect product of braids with `G_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectElement {
    pub braid: BraidWord,
    pub g: G0Element,
}

impl SemidirectElement {
    pub fn identity(t: &IntersectionTable) -> SemidirectElement {
        SemidirectElement { braid: BraidWord::identity(t.strands()), g: G0Element::identity(t) }
    }

    pub fn from_braid(b: BraidWord, t: &IntersectionTable) -> SemidirectElement {
        SemidirectElement { braid: b, g: G0Element::identity(t) }
    }

    pub fn from_g0(g: G0Element, t: &IntersectionTable) -> SemidirectElement {
        SemidirectElement { braid: BraidWord::identity(t.strands()), g }
    }
}

/// `(b1, g1)(b2, g2) = (b1 b2, g1^{b2} g2)`.
pub fn semidirect_mul(
    x: &SemidirectElement,
    y: &SemidirectElement,
    t: &IntersectionTable,
) -> Result<SemidirectElement> {
    let braid = x.braid.compose(&y.braid)?;
    let twisted = braid_word_action(&x.g, &y.braid, t)?;
    Ok(SemidirectElement { braid, g: g0_mul(&twisted, &y.g, t)? })
}

pub fn semidirect_inverse(x: &SemidirectElement, t: &IntersectionTable) -> Result<SemidirectElement> {
    let binv = x.braid.inverse();
    let g = braid_word_action(&g0_inverse(&x.g, t), &binv, t)?;
    Ok(SemidirectElement { braid: binv, g })
}

/// The two normal generators `c tau^-1` and `(g_1 xi_1^-1)^3`, with
/// `c = [T_1^2, T_2^2]` and `xi_1 = (T_2 T_1 T_2^-1)^2 T_2^-2`, where
/// `T_1, T_2` are the first two braid positions and `g_1` has label 1.
pub fn n9_relators(t: &IntersectionTable) -> Result<(SemidirectElement, SemidirectElement)> {
    let n = t.strands();
    if n < 3 {
        return Err(Error::InvalidTable("need at least two twist positions".into()));
    }
    let g1 = t.index_of(1).ok_or_else(|| Error::InvalidTable("no label 1".into()))?;
    let t1 = BraidWord::parse(n, "s1")?;
    let t2 = BraidWord::parse(n, "s2")?;
    let c = t1.pow(2).commutator(&t2.pow(2))?;
    let first = SemidirectElement { braid: c, g: G0Element::tau(t) };
    let xi = t2.compose(&t1)?.compose(&t2.inverse())?.pow(2).compose(&t2.pow(-2))?;
    let base = semidirect_mul(
        &SemidirectElement::from_g0(G0Element::generator(t, g1), t),
        &SemidirectElement::from_braid(xi.inverse(), t),
        t,
    )?;
    let sq = semidirect_mul(&base, &base, t)?;
    let second = semidirect_mul(&sq, &base, t)?;
    Ok((first, second))
}

/// Projection to the symmetric group through the braid coordinate.
pub fn psi_hat(x: &SemidirectElement) -> Permutation {
    x.braid.permutation()
}

/// Exponent sum of the braid coordinate.
pub fn ab_hat(x: &SemidirectElement) -> i64 {
    x.braid.exponent_sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub label: Option<u32>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ConfigurationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ConfigurationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "checked {}", self.checked)?;
        for v in &self.violations {
            match v.label {
                Some(l) => writeln!(f, "violation {} g{l}: {}", v.relation, v.detail)?,
                None => writeln!(f, "violation {}: {}", v.relation, v.detail)?,
            }
        }
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        writeln!(f, "{}", if self.is_valid() { "valid" } else { "invalid" })
    }
}

/// Check that the action descends to the braid quotient.
///
/// Each letter must respect the defining relations of `G_0`, and every
/// Artin relator and transversal commutator on the table's strand count
/// must fix every generator.
pub fn validate_configuration(t: &IntersectionTable) -> ConfigurationReport {
    let n = t.strands();
    let mut report = ConfigurationReport { checked: 0, violations: Vec::new(), notes: Vec::new() };
    let m = t.len();
    for k in 1..n {
        let name = format!("automorphism(s{k})");
        let images = match letter_images(k, t) {
            Ok(i) => i,
            Err(e) => {
                report.violations.push(Violation { relation: name, label: None, detail: e.to_string() });
                continue;
            }
        };
        for i in 0..m {
            for j in (i + 1)..m {
                report.checked += 1;
                let c = g0_commutator(&images[i], &images[j], t);
                let want = G0Element { exponents: vec![0; m], tau: t.commutator_bit(i, j) };
                if c != want {
                    report.violations.push(Violation {
                        relation: name.clone(),
                        label: Some(t.labels[i]),
                        detail: format!("[g{}, g{}] goes to {}", t.labels[i], t.labels[j], c.display(t)),
                    });
                }
            }
        }
    }
    let mut relators: Vec<(String, BraidWord)> =
        crate::braid::artin_relators(n).into_iter().map(|r| (format!("artin({r})"), r)).collect();
    if n >= 4 {
        for r in bt_presentation(n).transversal_relators {
            relators.push((format!("transversal({}|{})", r.x, r.y), r.word));
        }
    }
    for (name, r) in relators {
        for i in 0..m {
            report.checked += 1;
            let g = G0Element::generator(t, i);
            match braid_word_action(&g, &r, t) {
                Ok(img) if img == g => {}
                Ok(img) => report.violations.push(Violation {
                    relation: name.clone(),
                    label: Some(t.labels[i]),
                    detail: format!("goes to {}", img.display(t)),
                }),
                Err(e) => report.violations.push(Violation {
                    relation: name.clone(),
                    label: Some(t.labels[i]),
                    detail: e.to_string(),
                }),
            }
        }
    }
    let has_transversal = (0..m).any(|i| (0..m).any(|j| i != j && t.relation(i, j) == Relation::Transversal));
    if has_transversal {
        report.notes.push(format!("transversal pairs act as {}", t.transversal_action()));
    }
    report
}
