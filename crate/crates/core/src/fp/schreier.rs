//! Reidemeister-Schreier rewriting and Tietze simplification.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fp::coset::CosetTable;
use crate::fp::presentation::Presentation;
use crate::word::{self, Letter};

/// Presentation of a finite-index subgroup on Schreier generators.
///
/// Schreier generator `t` corresponds to the pair `labels[t] = (c, g)`: the
/// element `rep(c) g rep(c g)^-1` for a coset `c` and positive generator `g`
/// whose edge is not in the spanning tree.
#[derive(Clone, Debug)]
pub struct SchreierPresentation {
    pub presentation: Presentation,
    pub labels: Vec<(usize, usize)>,
    pub representatives: Vec<Vec<Letter>>,
    table: CosetTable,
    gen_of: Vec<Vec<Option<usize>>>,
}

impl SchreierPresentation {
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Rewrite a word read from coset `start` into Schreier generators.
    /// For a subgroup element read from coset 0 this expresses it in the
    /// subgroup's generators.
    pub fn rewrite(&self, start: usize, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        let mut c = start;
        for &l in w {
            let g = l.index();
            if l.is_inverse() {
                let d = self.table.act(c, l);
                if let Some(t) = self.gen_of[d][g - 1] {
                    word::push_reduced(&mut out, Letter::neg(t + 1));
                }
                c = d;
            } else {
                if let Some(t) = self.gen_of[c][g - 1] {
                    word::push_reduced(&mut out, Letter::pos(t + 1));
                }
                c = self.table.act(c, l);
            }
        }
        out
    }
}

/// Subgroup presentation from a complete coset table.
///
/// The spanning tree is the breadth-first tree of the standardized table,
/// so there are `index * (k - 1) + 1` Schreier generators for `k` group
/// generators. Every relator is rewritten at every coset.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<SchreierPresentation> {
    let k = p.generators();
    if table.generators() != k {
        return Err(Error::InvalidPresentation("coset table does not match presentation".into()));
    }
    let index = table.index();
    let mut in_tree = vec![vec![false; k]; index];
    let mut reps: Vec<Option<Vec<Letter>>> = vec![None; index];
    reps[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 1..=k {
            for inv in [false, true] {
                let l = Letter::new(g, inv);
                let d = table.act(c, l);
                if reps[d].is_none() {
                    let mut w = reps[c].clone().expect("visited");
                    w.push(l);
                    reps[d] = Some(w);
                    if inv {
                        in_tree[d][g - 1] = true;
                    } else {
                        in_tree[c][g - 1] = true;
                    }
                    queue.push_back(d);
                }
            }
        }
    }
    let representatives: Vec<Vec<Letter>> =
        reps.into_iter().map(|r| r.ok_or_else(|| Error::InvalidPresentation("table not connected".into()))).collect::<Result<_>>()?;

    let mut labels = Vec::new();
    let mut gen_of = vec![vec![None; k]; index];
    for c in 0..index {
        for g in 0..k {
            if !in_tree[c][g] {
                gen_of[c][g] = Some(labels.len());
                labels.push((c, g + 1));
            }
        }
    }
    let mut sp = SchreierPresentation {
        presentation: Presentation::free(labels.len()),
        labels,
        representatives,
        table: table.clone(),
        gen_of,
    };
    let mut relators = Vec::new();
    let mut seen = HashSet::new();
    for r in p.relators() {
        for c in 0..index {
            let w = word::cyclically_reduce(&sp.rewrite(c, r));
            if !w.is_empty() && seen.insert(canonical_cyclic(&w)) {
                relators.push(w);
            }
        }
    }
    sp.presentation = Presentation::new(sp.labels.len(), relators)?;
    Ok(sp)
}

/// Least rotation of `w` or of its inverse, used to drop repeated relators.
fn canonical_cyclic(w: &[Letter]) -> Vec<Letter> {
    let inv = word::invert(w);
    let mut best: Option<Vec<Letter>> = None;
    for v in [w, inv.as_slice()] {
        for s in 0..v.len() {
            let rot: Vec<Letter> = v[s..].iter().chain(&v[..s]).copied().collect();
            let key = |x: &Vec<Letter>| x.iter().map(|l| l.signed()).collect::<Vec<_>>();
            if best.as_ref().is_none_or(|b| key(&rot) < key(b)) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Eliminate generators that occur exactly once in some relator.
///
/// Generators are tried in `order` (1-based indices; any generator not
/// listed is tried afterwards in increasing order), repeating passes until
/// nothing changes. A substitution is skipped if it would push the total
/// relator length past `max_length`. The surviving generators are
/// renumbered consecutively.
pub fn tietze_simplify(p: &Presentation, order: &[usize], max_length: usize) -> Presentation {
    let k = p.generators();
    let mut sequence: Vec<usize> = order.iter().copied().filter(|&g| g >= 1 && g <= k).collect();
    let listed: HashSet<usize> = sequence.iter().copied().collect();
    sequence.extend((1..=k).filter(|g| !listed.contains(g)));

    let mut relators: Vec<Vec<Letter>> = p.relators().iter().map(|r| word::cyclically_reduce(r)).collect();
    let mut alive = vec![true; k + 1];
    loop {
        let mut changed = false;
        for &g in &sequence {
            if !alive[g] {
                continue;
            }
            // shortest relator containing g exactly once
            let pick = relators
                .iter()
                .enumerate()
                .filter(|(_, r)| r.iter().filter(|l| l.index() == g).count() == 1)
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i);
            let Some(i) = pick else { continue };
            let r = &relators[i];
            let pos = r.iter().position(|l| l.index() == g).expect("present");
            let (u, v) = (&r[..pos], &r[pos + 1..]);
            // u g v = 1 gives g = u^-1 v^-1; u g^-1 v = 1 gives g = v u
            let image: Vec<Letter> = if r[pos].is_inverse() {
                word::concat_reduced(v, u)
            } else {
                word::concat_reduced(&word::invert(u), &word::invert(v))
            };
            let inverse_image = word::invert(&image);
            let mut next: Vec<Vec<Letter>> = Vec::with_capacity(relators.len());
            for (j, s) in relators.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut out = Vec::with_capacity(s.len());
                for &l in s {
                    if l.index() == g {
                        let img = if l.is_inverse() { &inverse_image } else { &image };
                        for &x in img {
                            word::push_reduced(&mut out, x);
                        }
                    } else {
                        word::push_reduced(&mut out, l);
                    }
                }
                let out = word::cyclically_reduce(&out);
                if !out.is_empty() {
                    next.push(out);
                }
            }
            if next.iter().map(Vec::len).sum::<usize>() > max_length {
                continue;
            }
            dedupe(&mut next);
            relators = next;
            alive[g] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut new_index = vec![0usize; k + 1];
    let mut count = 0;
    for g in 1..=k {
        if alive[g] {
            count += 1;
            new_index[g] = count;
        }
    }
    let relators = relators
        .into_iter()
        .map(|r| r.into_iter().map(|l| Letter::new(new_index[l.index()], l.is_inverse())).collect())
        .collect();
    Presentation::new(count, relators).expect("renumbered generators are in range")
}

fn dedupe(relators: &mut Vec<Vec<Letter>>) {
    let mut seen = HashSet::new();
    relators.retain(|r| seen.insert(canonical_cyclic(r)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::coset::todd_coxeter;
    use crate::fp::snf::abelianization;

    fn g(i: i32) -> Letter {
        Letter::from_signed(i)
    }

    #[test]
    fn index_two_in_free_group_of_rank_two() {
        // kernel of F2 -> Z_2 sending both generators to 1
        let free = Presentation::free(2);
        let p = Presentation::new(2, vec![]).unwrap();
        let sub = vec![vec![g(1), g(1)], vec![g(1), g(2)], vec![g(2), g(1)]];
        let t = todd_coxeter(&p, &sub, 100).unwrap();
        assert_eq!(t.index(), 2);
        let sp = reidemeister_schreier(&free, &t).unwrap();
        assert_eq!(sp.presentation.generators(), 3);
        assert!(sp.presentation.relators().is_empty());
    }

    #[test]
    fn rewriting_lands_in_subgroup() {
        let p = Presentation::parse("gens 2\ng1 g1\ng2 g2 g2\ng1 g2 g1 g2").unwrap();
        let t = todd_coxeter(&p, &[vec![g(2)]], 100).unwrap();
        assert_eq!(t.index(), 2);
        let sp = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(sp.presentation.generators(), 3);
        for (c, gen) in &sp.labels {
            let rep = &sp.representatives[*c];
            let d = t.act(*c, Letter::pos(*gen));
            let mut w = rep.clone();
            w.push(Letter::pos(*gen));
            w.extend(word::invert(&sp.representatives[d]));
            assert_eq!(t.trace(0, &w), 0);
        }
        // Z_3 inside S_3
        assert_eq!(abelianization(&sp.presentation).to_string(), "Z_3");
    }

    #[test]
    fn tietze_keeps_abelianization() {
        let p = Presentation::parse("gens 3\ng1 g2 g3^-1\ng3 g3\ng1 g2 g1^-1 g2^-1").unwrap();
        let before = abelianization(&p);
        let q = tietze_simplify(&p, &[1, 2, 3], 1000);
        assert_eq!(abelianization(&q), before);
        assert!(q.generators() < 3);
    }
}
