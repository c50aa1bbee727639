//! Braid words in Artin generators, the permutation and exponent-sum
//! homomorphisms, and equality through the Artin action on the free group.
//!
//! Conventions:
//!
//! * Composition is left to right: the word `u v` means "first `u`, then `v`".
//! * `s_k` is the positive half-twist exchanging points `k` and `k + 1`. It acts
//!   on the free group `F(x_1, ..., x_n)` by
//!   `x_k -> x_k x_{k+1} x_k^-1`, `x_{k+1} -> x_k`, fixing every other `x_j`.
//!   A braid word acts letter by letter from left to right. With the loops
//!   `x_j` drawn from a base point below all marked points, this is the
//!   counterclockwise twist, and the boundary loop `x_1 x_2 ... x_n` is fixed.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{self, DisplayWord, Letter};

/// Default cap on the total number of letters held while computing an
/// Artin action.
pub const DEFAULT_WORD_BUDGET: usize = 1 << 24;

/// A freely reduced word in the Artin generators of `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new<I: IntoIterator<Item = Letter>>(strands: usize, letters: I) -> Result<BraidWord> {
        if strands == 0 {
            return Err(Error::TooFewStrands { got: 0, min: 1 });
        }
        let letters = word::reduce(letters);
        for l in &letters {
            if l.index() >= strands {
                return Err(Error::IndexOutOfRange { index: l.index(), strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> BraidWord {
        assert!(strands >= 1);
        BraidWord { strands, letters: Vec::new() }
    }

    /// `s_k` or `s_k^-1`.
    pub fn generator(strands: usize, k: usize, inverse: bool) -> Result<BraidWord> {
        if k == 0 || k >= strands {
            return Err(Error::IndexOutOfRange { index: k, strands });
        }
        Ok(BraidWord { strands, letters: vec![Letter::new(k, inverse)] })
    }

    /// From signed indices, e.g. `[1, -2]` for `s1 s2^-1`.
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<BraidWord> {
        if letters.contains(&0) {
            return Err(Error::IndexOutOfRange { index: 0, strands });
        }
        BraidWord::new(strands, letters.iter().map(|&v| Letter::from_signed(v)))
    }

    /// Parse the `s1 s2^-1 s1` token grammar.
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord> {
        BraidWord::new(strands, word::parse_tokens(text, 's')?)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: word::invert(&self.letters) }
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same(other)?;
        Ok(BraidWord {
            strands: self.strands,
            letters: word::concat_reduced(&self.letters, &other.letters),
        })
    }

    pub fn pow(&self, exp: i64) -> BraidWord {
        BraidWord { strands: self.strands, letters: word::power(&self.letters, exp) }
    }

    /// `(self)_b = b^-1 self b`.
    pub fn conjugate_by(&self, b: &BraidWord) -> Result<BraidWord> {
        b.inverse().compose(self)?.compose(b)
    }

    /// `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same(other)?;
        Ok(BraidWord {
            strands: self.strands,
            letters: word::commutator(&self.letters, &other.letters),
        })
    }

    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for l in &self.letters {
            p.swap_values(l.index() - 1, l.index());
        }
        p
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Images of `x_1, ..., x_n` under the Artin action of this braid.
    ///
    /// Letters are processed from the right so that only two table entries
    /// change per letter; the result equals applying the letters left to right.
    pub fn artin_images(&self, budget: usize) -> Result<Vec<FreeWord>> {
        let n = self.strands;
        let mut table: Vec<Vec<Letter>> = (1..=n).map(|j| vec![Letter::pos(j)]).collect();
        let mut total = n;
        for l in self.letters.iter().rev() {
            let k = l.index() - 1;
            let (a, b) = (table[k].clone(), table[k + 1].clone());
            let (new_k, new_k1) = if l.is_inverse() {
                // x_k -> x_{k+1}, x_{k+1} -> x_{k+1}^-1 x_k x_{k+1}
                let t = word::concat_reduced(&word::invert(&b), &a);
                (b.clone(), word::concat_reduced(&t, &b))
            } else {
                // x_k -> x_k x_{k+1} x_k^-1, x_{k+1} -> x_k
                let t = word::concat_reduced(&a, &b);
                (word::concat_reduced(&t, &word::invert(&a)), a.clone())
            };
            total = total + new_k.len() + new_k1.len() - a.len() - b.len();
            if total > budget {
                return Err(Error::BudgetExceeded { what: "free word length", limit: budget });
            }
            table[k] = new_k;
            table[k + 1] = new_k1;
        }
        Ok(table.into_iter().map(|letters| FreeWord { letters }).collect())
    }

    fn check_same(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        word::fmt_word(&self.letters, 's', f)
    }
}

/// A permutation of `{1, ..., n}`, stored 0-based. Products are taken left to
/// right: `p.then(q)` maps `i` to `q(p(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images; fails unless this is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Permutation> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || std::mem::replace(&mut seen[v], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// The transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths (including fixed points) in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    // post-compose with the transposition (a b), 0-based
    fn swap_values(&mut self, a: usize, b: usize) {
        for v in self.images.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    pub fn is_transposition(&self) -> bool {
        let c = self.cycles();
        c.len() == 1 && c[0].len() == 2
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A freely reduced word in the free generators `x_1, x_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> FreeWord {
        FreeWord { letters: word::reduce(letters) }
    }

    pub fn generator(j: usize) -> FreeWord {
        FreeWord { letters: vec![Letter::pos(j)] }
    }

    pub fn parse(text: &str) -> Result<FreeWord> {
        Ok(FreeWord::new(word::parse_tokens(text, 'x')?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord { letters: word::concat_reduced(&self.letters, &other.letters) }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: word::invert(&self.letters) }
    }

    /// Replace each `x_j` by `images[j - 1]`.
    pub fn substitute(&self, images: &[FreeWord], budget: usize) -> Result<FreeWord> {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.letters {
            let img = &images[l.index() - 1].letters;
            if l.is_inverse() {
                for &m in img.iter().rev() {
                    word::push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in img {
                    word::push_reduced(&mut out, m);
                }
            }
            if out.len() > budget {
                return Err(Error::BudgetExceeded { what: "free word length", limit: budget });
            }
        }
        Ok(FreeWord { letters: out })
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        DisplayWord { word: &self.letters, prefix: 'x' }.fmt(f)
    }
}

pub fn compose(u: &BraidWord, v: &BraidWord) -> Result<BraidWord> {
    u.compose(v)
}

/// Apply the Artin automorphism of `b` to `w`.
pub fn artin_action(b: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
    artin_action_with_budget(b, w, DEFAULT_WORD_BUDGET)
}

pub fn artin_action_with_budget(b: &BraidWord, w: &FreeWord, budget: usize) -> Result<FreeWord> {
    if let Some(l) = w.letters.iter().find(|l| l.index() > b.strands) {
        return Err(Error::IndexOutOfRange { index: l.index(), strands: b.strands });
    }
    let images = b.artin_images(budget)?;
    w.substitute(&images, budget)
}

/// Decide `u = v` in `B_n` by comparing the Artin images of every free
/// generator. The Artin representation is faithful, so this is exact.
pub fn are_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    are_equal_with_budget(u, v, DEFAULT_WORD_BUDGET)
}

pub fn are_equal_with_budget(u: &BraidWord, v: &BraidWord, budget: usize) -> Result<bool> {
    u.check_same(v)?;
    if u.letters == v.letters {
        return Ok(true);
    }
    if u.exponent_sum() != v.exponent_sum() || u.permutation() != v.permutation() {
        return Ok(false);
    }
    Ok(u.artin_images(budget)? == v.artin_images(budget)?)
}

pub fn permutation_of(b: &BraidWord) -> Permutation {
    b.permutation()
}

pub fn exponent_sum(b: &BraidWord) -> i64 {
    b.exponent_sum()
}

pub fn is_pure(b: &BraidWord) -> bool {
    b.is_pure()
}

/// `(s_1 s_2 ... s_{n-1})^n`, the generator of the center of `B_n`.
pub fn delta_squared(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::TooFewStrands { got: n, min: 2 });
    }
    let cycle = BraidWord::new(n, (1..n).map(Letter::pos))?;
    Ok(cycle.pow(n as i64))
}

/// True iff `b` commutes with every Artin generator.
pub fn is_central(b: &BraidWord) -> Result<bool> {
    let n = b.strands;
    for k in 1..n {
        let s = BraidWord::generator(n, k, false)?;
        if !are_equal(&b.compose(&s)?, &s.compose(b)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Artin relators of `B_n` as braid words: `[s_i, s_j]` for `|i - j| > 1`
/// and `s_i s_j s_i s_j^-1 s_i^-1 s_j^-1` for `j = i + 1`.
pub fn artin_relators(n: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in (i + 1)..n {
            let letters: Vec<i32> = if j == i + 1 {
                let (a, b) = (i as i32, j as i32);
                vec![a, b, a, -b, -a, -b]
            } else {
                let (a, b) = (i as i32, j as i32);
                vec![a, b, -a, -b]
            };
            out.push(BraidWord::from_signed(n, &letters).expect("indices in range"));
        }
    }
    out
}
