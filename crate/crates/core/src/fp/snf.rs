//! Smith normal form over the integers with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::fp::presentation::Presentation;

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` (all positive) of an
/// integer matrix, together with its rank `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form_i64(m: &[Vec<i64>]) -> SmithForm {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    smith_normal_form(big)
}

/// Diagonalize by unimodular row and column operations.
///
/// Each round moves an entry of least absolute value to the pivot, clears
/// its row and column by division with remainder, and repeats while a
/// remainder survives. A pivot that fails to divide some remaining entry
/// absorbs that entry's row, which forces the divisibility chain.
pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // least nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                    if a[i][j].abs().is_one() {
                        break;
                    }
                }
            }
            if let Some((bi, bj)) = best {
                if a[bi][bj].abs().is_one() {
                    break;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut dirty = false;
            // clear column t
            for i in (t + 1)..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * p;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t
            for j in (t + 1)..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let p = row[t].clone();
                        if !p.is_zero() {
                            row[j] -= &q * p;
                        }
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'search: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !a[i][j].is_multiple_of(&a[t][t]) {
                        fix = Some(i);
                        break 'search;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    SmithForm { diagonal }
}

/// Finitely generated abelian group `Z^r + Z_{d_1} + ... + Z_{d_k}` with
/// `d_1 | ... | d_k`, each `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Cokernel of the relation matrix: rows are relations, `generators` columns.
    pub fn from_relation_matrix(generators: usize, m: &[Vec<i64>]) -> AbelianInvariants {
        let snf = smith_normal_form_i64(m);
        AbelianInvariants::from_smith(generators, &snf)
    }

    pub fn from_smith(generators: usize, snf: &SmithForm) -> AbelianInvariants {
        AbelianInvariants {
            free_rank: generators - snf.rank(),
            torsion: snf.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn free(rank: usize) -> AbelianInvariants {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// Abelianization of a finitely presented group.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    AbelianInvariants::from_relation_matrix(p.generators(), &p.exponent_matrix())
}

/// Compact form such as `Z^3+Z_2+Z_6`; the trivial group prints as `0`.
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}
