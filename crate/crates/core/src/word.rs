//! Signed generator letters and freely reduced words.
//!
//! The same letter type backs braid words (`s<k>`), free-group words
//! (`x<k>`) and presentation relators (`g<k>`); only the token prefix
//! differs when printing or parsing.

use std::fmt;

use crate::error::ParseError;

/// A generator or its inverse. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Letter {
        assert!(index >= 1, "generator indices are 1-based");
        let v = index as i32;
        Letter(if inverse { -v } else { v })
    }

    pub fn pos(index: usize) -> Letter {
        Letter::new(index, false)
    }

    pub fn neg(index: usize) -> Letter {
        Letter::new(index, true)
    }

    /// From a signed integer: `k` or `-k`.
    pub fn from_signed(v: i32) -> Letter {
        assert!(v != 0, "zero is not a letter");
        Letter(v)
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub(crate) fn fmt_with(self, prefix: char, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "{}{}^-1", prefix, self.index())
        } else {
            write!(f, "{}{}", prefix, self.index())
        }
    }
}

/// Push `l` onto a reduced word, cancelling against the last letter.
#[inline]
pub fn push_reduced(word: &mut Vec<Letter>, l: Letter) {
    if word.last() == Some(&l.inverse()) {
        word.pop();
    } else {
        word.push(l);
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

pub fn is_reduced(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[0] != w[1].inverse())
}

pub fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Concatenate two reduced words, cancelling only at the junction.
pub fn concat_reduced(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut cancel = 0;
    while cancel < a.len() && cancel < b.len() && a[a.len() - 1 - cancel] == b[cancel].inverse() {
        cancel += 1;
    }
    let mut out = Vec::with_capacity(a.len() + b.len() - 2 * cancel);
    out.extend_from_slice(&a[..a.len() - cancel]);
    out.extend_from_slice(&b[cancel..]);
    out
}

/// Cyclic reduction: strip matching inverse letters from both ends.
pub fn cyclically_reduce(word: &[Letter]) -> Vec<Letter> {
    let w = reduce(word.iter().copied());
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Commutator `[a, b] = a b a^-1 b^-1`.
pub fn commutator(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut all = Vec::with_capacity(2 * (a.len() + b.len()));
    all.extend_from_slice(a);
    all.extend_from_slice(b);
    all.extend(invert(a));
    all.extend(invert(b));
    reduce(all)
}

pub fn power(word: &[Letter], exp: i64) -> Vec<Letter> {
    let base = if exp < 0 { invert(word) } else { word.to_vec() };
    let mut out = Vec::new();
    for _ in 0..exp.unsigned_abs() {
        out = concat_reduced(&out, &base);
    }
    out
}

pub(crate) fn fmt_word(word: &[Letter], prefix: char, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, l) in word.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        l.fmt_with(prefix, f)?;
    }
    Ok(())
}

/// Adapter for printing a bare letter slice with a given prefix.
pub struct DisplayWord<'a> {
    pub word: &'a [Letter],
    pub prefix: char,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(self.word, self.prefix, f)
    }
}

/// Parse whitespace-separated `<prefix><k>` / `<prefix><k>^-1` tokens.
/// The result is not reduced.
pub fn parse_tokens(text: &str, prefix: char) -> Result<Vec<Letter>, ParseError> {
    text.split_whitespace().map(|tok| parse_token(tok, prefix)).collect()
}

fn parse_token(tok: &str, prefix: char) -> Result<Letter, ParseError> {
    let bad = || ParseError::Token { token: tok.to_string(), prefix };
    let rest = tok.strip_prefix(prefix).ok_or_else(bad)?;
    let (digits, inverse) = match rest.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 || index > i32::MAX as usize {
        return Err(bad());
    }
    Ok(Letter::new(index, inverse))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = parse_tokens("s1 s2^-1  s10", 's').unwrap();
        assert_eq!(w, vec![Letter::pos(1), Letter::neg(2), Letter::pos(10)]);
        assert_eq!(DisplayWord { word: &w, prefix: 's' }.to_string(), "s1 s2^-1 s10");
    }

    #[test]
    fn bad_tokens() {
        for t in ["s0", "x1", "s", "s1^-2", "s-1", "s1^1", "s1x"] {
            assert!(parse_tokens(t, 's').is_err(), "{t}");
        }
        assert!(parse_tokens("", 's').unwrap().is_empty());
    }

    #[test]
    fn reduction() {
        let a = Letter::pos(1);
        let b = Letter::pos(2);
        assert_eq!(reduce([a, b, b.inverse(), a.inverse(), b]), vec![b]);
        assert_eq!(concat_reduced(&[a, b], &[b.inverse(), a]), vec![a, a]);
        assert_eq!(cyclically_reduce(&[a, b, a.inverse()]), vec![b]);
        assert!(commutator(&[a], &[a]).is_empty());
        assert_eq!(power(&[a, b], -2), vec![b.inverse(), a.inverse(), b.inverse(), a.inverse()]);
    }
}
