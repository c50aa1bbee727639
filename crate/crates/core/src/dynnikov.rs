//! Braid action on Dynnikov coordinates of integral laminations in the
//! punctured disc.
//!
//! This is a second faithful action of `B_n`, unrelated to the free-group
//! action in [`crate::braid`], used to cross-check braid equality. The
//! lamination with coordinates `(0, 1, 0, 1, ..., 0, 1)` has trivial
//! stabilizer, so two braids are equal iff they send it to the same point.

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Magnitude bound kept well inside `i128` so that one letter cannot overflow.
const MAGNITUDE_LIMIT: i128 = 1 << 100;

/// Dynnikov coordinates `(a_1, b_1, ..., a_n, b_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinates(pub Vec<(i128, i128)>);

impl Coordinates {
    /// The lamination whose stabilizer is trivial.
    pub fn standard(strands: usize) -> Coordinates {
        Coordinates(vec![(0, 1); strands])
    }
}

#[inline]
fn pos(x: i128) -> i128 {
    x.max(0)
}

#[inline]
fn neg(x: i128) -> i128 {
    x.min(0)
}

/// Act by one signed generator on pairs `k` and `k + 1` (0-based `k`).
fn act_letter(c: &mut [(i128, i128)], k: usize, inverse: bool) {
    let (a1, b1) = c[k];
    let (a2, b2) = c[k + 1];
    if !inverse {
        let e = a1 - neg(b1) - a2 + pos(b2);
        c[k] = (a1 + pos(b1) + pos(pos(b2) - e), b2 - pos(e));
        c[k + 1] = (a2 + neg(b2) + neg(neg(b1) + e), b1 + pos(e));
    } else {
        let f = a1 + neg(b1) - a2 - pos(b2);
        c[k] = (a1 - pos(b1) - pos(pos(b2) + f), b2 + neg(f));
        c[k + 1] = (a2 - neg(b2) - neg(neg(b1) - f), b1 - neg(f));
    }
}

/// Apply `b` to `coords`, letters left to right.
pub fn act(b: &BraidWord, coords: &Coordinates) -> Result<Coordinates> {
    if coords.0.len() < b.strands() {
        return Err(Error::StrandMismatch(b.strands(), coords.0.len()));
    }
    let mut c = coords.0.clone();
    for l in b.letters() {
        act_letter(&mut c, l.index() - 1, l.is_inverse());
        let (x, y) = (c[l.index() - 1], c[l.index()]);
        if [x.0, x.1, y.0, y.1].iter().any(|v| v.abs() > MAGNITUDE_LIMIT) {
            return Err(Error::BudgetExceeded { what: "Dynnikov coordinate magnitude", limit: 100 });
        }
    }
    Ok(Coordinates(c))
}

/// Equality in `B_n` decided through the Dynnikov action.
pub fn are_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands() != v.strands() {
        return Err(Error::StrandMismatch(u.strands(), v.strands()));
    }
    let start = Coordinates::standard(u.strands());
    Ok(act(u, &start)? == act(v, &start)?)
}

pub fn is_trivial(b: &BraidWord) -> Result<bool> {
    let start = Coordinates::standard(b.strands());
    Ok(act(b, &start)? == start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::artin_relators;

    fn bw(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    fn sample_coords(n: usize, seed: i128) -> Coordinates {
        Coordinates(
            (0..n as i128)
                .map(|i| (((seed * 7 + i * 13) % 11) - 5, ((seed * 5 + i * 3) % 9) - 4))
                .collect(),
        )
    }

    #[test]
    fn letters_are_invertible() {
        for seed in 0..40 {
            let c = sample_coords(5, seed);
            for k in 1..5 {
                let there = act(&bw(5, &format!("s{k}")), &c).unwrap();
                assert_eq!(act(&bw(5, &format!("s{k}^-1")), &there).unwrap(), c);
            }
        }
    }

    #[test]
    fn relations_act_trivially_everywhere() {
        for n in 2..7 {
            for r in artin_relators(n) {
                for seed in 0..30 {
                    let c = sample_coords(n, seed);
                    assert_eq!(act(&r, &c).unwrap(), c, "relator {r}");
                }
            }
        }
    }

    #[test]
    fn detects_nontrivial_braids() {
        assert!(is_trivial(&BraidWord::identity(4)).unwrap());
        assert!(!is_trivial(&bw(3, "s1 s1")).unwrap());
        assert!(!is_trivial(&bw(3, "s1 s1 s2 s2 s1^-1 s1^-1 s2^-1 s2^-1")).unwrap());
        assert!(is_trivial(&bw(3, "s1 s2 s1 s2^-1 s1^-1 s2^-1")).unwrap());
        assert!(are_equal(&bw(4, "s1 s3"), &bw(4, "s3 s1")).unwrap());
    }
}
