//! Garside left normal form `Δ^e A_1 ... A_r` of a braid.
//!
//! Simple elements are stored as `q`, where `q[p]` is the starting position of
//! the strand found at position `p` afterwards. Products read left to right.

use std::fmt;

use crate::braid::BraidWord;
use crate::word::{self, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    strands: usize,
    delta_power: i64,
    factors: Vec<Vec<usize>>,
}

fn delta(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

fn tau(q: &[usize]) -> Vec<usize> {
    let n = q.len();
    (0..n).map(|p| n - 1 - q[n - 1 - p]).collect()
}

fn finishing(q: &[usize], i: usize) -> bool {
    q[i] > q[i + 1]
}

fn starting(q: &[usize], i: usize) -> bool {
    let pos = |s: usize| q.iter().position(|&x| x == s).unwrap();
    pos(i) > pos(i + 1)
}

fn swap_values(q: &mut [usize], i: usize) {
    for x in q.iter_mut() {
        if *x == i {
            *x = i + 1;
        } else if *x == i + 1 {
            *x = i;
        }
    }
}

/// Positive word of a simple element, 1-based letters.
fn simple_word(q: &[usize]) -> Vec<Letter> {
    let mut q = q.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..q.len().saturating_sub(1)).find(|&i| q[i] > q[i + 1]) {
        q.swap(i, i + 1);
        rev.push(Letter::pos(i + 1));
    }
    rev.reverse();
    rev
}

impl NormalForm {
    pub fn identity(strands: usize) -> NormalForm {
        NormalForm { strands, delta_power: 0, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    /// Number of non-Δ simple factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    fn push_simple(&mut self, x: Vec<usize>) {
        self.factors.push(x);
        for j in (0..self.factors.len() - 1).rev() {
            let (left, right) = self.factors.split_at_mut(j + 1);
            let (a, b) = (&mut left[j], &mut right[0]);
            while let Some(i) = (0..self.strands - 1).find(|&i| starting(b, i) && !finishing(a, i)) {
                a.swap(i, i + 1);
                swap_values(b, i);
            }
        }
        while self.factors.last().is_some_and(|q| q.windows(2).all(|w| w[0] < w[1])) {
            self.factors.pop();
        }
        let d = delta(self.strands);
        let lead = self.factors.iter().take_while(|q| **q == d).count();
        self.factors.drain(..lead);
        self.delta_power += lead as i64;
    }

    pub fn push(&mut self, l: Letter) {
        let n = self.strands;
        let i = l.index() - 1;
        if l.is_inverse() {
            // x s_i^-1 = Δ^-1 τ(x) (Δ s_i^-1)
            self.delta_power -= 1;
            for q in &mut self.factors {
                *q = tau(q);
            }
            let mut b = delta(n);
            b.swap(i, i + 1);
            self.push_simple(b);
        } else {
            let mut s: Vec<usize> = (0..n).collect();
            s.swap(i, i + 1);
            self.push_simple(s);
        }
    }

    pub fn to_braid(&self) -> BraidWord {
        let n = self.strands;
        let d = simple_word(&delta(n));
        let mut letters = Vec::new();
        let block = if self.delta_power < 0 { word::invert(&d) } else { d };
        for _ in 0..self.delta_power.unsigned_abs() {
            letters = word::concat_reduced(&letters, &block);
        }
        for q in &self.factors {
            letters = word::concat_reduced(&letters, &simple_word(q));
        }
        BraidWord::new(n, letters).expect("letters in range")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for q in &self.factors {
            f.write_str(" .")?;
            for l in simple_word(q) {
                write!(f, " s{}", l.index())?;
            }
        }
        Ok(())
    }
}

/// Left normal form. Two words are the same braid iff their forms are equal.
pub fn left_normal_form(b: &BraidWord) -> NormalForm {
    let mut nf = NormalForm::identity(b.strands());
    for &l in b.letters() {
        nf.push(l);
    }
    nf
}

/// The normal-form word when it is shorter than `b`, otherwise `b` itself.
pub fn shorten(b: &BraidWord) -> BraidWord {
    let c = left_normal_form(b).to_braid();
    if c.len() < b.len() { c } else { b.clone() }
}
