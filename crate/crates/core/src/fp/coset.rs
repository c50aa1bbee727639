//! Todd-Coxeter coset enumeration.
//!
//! Two strategies share one table and coincidence routine:
//!
//! * [`Strategy::Hlt`] scans every relator at each coset in turn, defining
//!   new cosets as needed (Haselgrove-Leech-Trotter). When the budget is hit
//!   it runs a deduction-only lookahead over all cosets and compacts away
//!   dead rows before giving up.
//! * [`Strategy::Felsch`] fills the first undefined entry and immediately
//!   traces every relator cycle through the new edge, so no coset is defined
//!   while a deduction is pending.
//!
//! The returned table is standardized (cosets numbered in breadth-first
//! order from the subgroup coset), so both strategies give identical output
//! for the same group and subgroup.

use crate::error::{Error, Result};
use crate::fp::presentation::Presentation;
use crate::word::{self, Letter};

const UNDEF: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

#[inline]
fn col(l: Letter) -> usize {
    2 * (l.index() - 1) + l.is_inverse() as usize
}

#[cfg(test)]
fn letter_of(c: usize) -> Letter {
    Letter::new(c / 2 + 1, c % 2 == 1)
}

/// A complete coset table. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Coset reached from `coset` by the letter `l`.
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset][col(l)]
    }

    pub fn trace(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation of the cosets induced by generator `g` (1-based).
    pub fn generator_action(&self, g: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[2 * (g - 1)]).collect()
    }

    /// Check that the table is closed and consistent: every entry defined,
    /// generator and inverse columns mutually inverse, every relator fixes
    /// every coset, and every subgroup generator fixes coset 0.
    pub fn validate(&self, p: &Presentation, subgroup: &[Vec<Letter>]) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPresentation(format!("coset table: {msg}")));
        if p.generators() != self.generators {
            return bad("generator count differs from presentation".into());
        }
        for (c, row) in self.rows.iter().enumerate() {
            for (x, &d) in row.iter().enumerate() {
                if d >= self.rows.len() {
                    return bad(format!("entry ({c}, {x}) undefined"));
                }
                if self.rows[d][x ^ 1] != c {
                    return bad(format!("entry ({c}, {x}) not inverted by its partner"));
                }
            }
        }
        for (i, r) in p.relators().iter().enumerate() {
            for c in 0..self.rows.len() {
                if self.trace(c, r) != c {
                    return bad(format!("relator {i} moves coset {c}"));
                }
            }
        }
        for (i, w) in subgroup.iter().enumerate() {
            if self.trace(0, w) != 0 {
                return bad(format!("subgroup generator {i} moves coset 0"));
            }
        }
        Ok(())
    }

    /// Renumber cosets in breadth-first order from coset 0, scanning columns
    /// in the fixed order `g1, g1^-1, g2, ...`.
    fn standardize(&self) -> CosetTable {
        let n = self.rows.len();
        let mut new_of = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        new_of[0] = 0;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for &d in &self.rows[c] {
                if new_of[d] == UNDEF {
                    new_of[d] = order.len();
                    order.push(d);
                }
            }
        }
        let rows = order
            .iter()
            .map(|&old| self.rows[old].iter().map(|&d| new_of[d]).collect())
            .collect();
        CosetTable { generators: self.generators, rows }
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup` with the
/// default strategy.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Vec<Letter>], max_cosets: usize) -> Result<CosetTable> {
    todd_coxeter_with(p, subgroup, max_cosets, Strategy::Hlt)
}

/// Enumerate cosets with an explicit strategy. `max_cosets` bounds the
/// number of simultaneously allocated table rows; running out is reported
/// as [`Error::BudgetExceeded`].
pub fn todd_coxeter_with(
    p: &Presentation,
    subgroup: &[Vec<Letter>],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable> {
    for w in subgroup {
        if let Some(l) = w.iter().find(|l| l.index() > p.generators()) {
            return Err(Error::InvalidPresentation(format!(
                "subgroup generator uses g{} outside the presentation",
                l.index()
            )));
        }
    }
    let subgroup: Vec<Vec<Letter>> = subgroup.iter().map(|w| word::reduce(w.iter().copied())).collect();
    let mut e = Enumerator::new(p, max_cosets.max(1), strategy == Strategy::Felsch);
    match strategy {
        Strategy::Hlt => e.run_hlt(&subgroup)?,
        Strategy::Felsch => e.run_felsch(&subgroup)?,
    }
    let table = e.finish().standardize();
    table.validate(p, &subgroup)?;
    Ok(table)
}

struct Enumerator {
    ncols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max: usize,
    relators: Vec<Vec<usize>>,
    /// Cyclic conjugates of relators and their inverses, keyed by first column.
    cycles_by_col: Vec<Vec<Vec<usize>>>,
    queue: Vec<usize>,
    record: bool,
    deductions: Vec<(usize, usize)>,
}

enum Stop {
    Budget,
}

impl Enumerator {
    fn new(p: &Presentation, max: usize, record: bool) -> Enumerator {
        let ncols = 2 * p.generators();
        let relators: Vec<Vec<usize>> = p
            .relators()
            .iter()
            .map(|r| word::cyclically_reduce(r).into_iter().map(col).collect())
            .filter(|r: &Vec<usize>| !r.is_empty())
            .collect();
        let mut cycles_by_col = vec![Vec::new(); ncols];
        if record {
            let mut seen = std::collections::HashSet::new();
            for r in &relators {
                let inv: Vec<usize> = r.iter().rev().map(|&c| c ^ 1).collect();
                for w in [r, &inv] {
                    for s in 0..w.len() {
                        let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).copied().collect();
                        if seen.insert(rot.clone()) {
                            cycles_by_col[rot[0]].push(rot);
                        }
                    }
                }
            }
        }
        Enumerator {
            ncols,
            rows: vec![vec![UNDEF; ncols]],
            parent: vec![0],
            live: 1,
            max,
            relators,
            cycles_by_col,
            queue: Vec::new(),
            record,
            deductions: Vec::new(),
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.rows[c][x] = d;
        self.rows[d][x ^ 1] = c;
        if self.record {
            self.deductions.push((c, x));
        }
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<usize, Stop> {
        if self.rows.len() >= self.max {
            return Err(Stop::Budget);
        }
        let d = self.rows.len();
        self.rows.push(vec![UNDEF; self.ncols]);
        self.parent.push(d);
        self.live += 1;
        self.set(c, x, d);
        Ok(d)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let e = self.queue[head];
            head += 1;
            for x in 0..self.ncols {
                let f = self.rows[e][x];
                if f == UNDEF {
                    continue;
                }
                self.rows[e][x] = UNDEF;
                if self.rows[f][x ^ 1] == e {
                    self.rows[f][x ^ 1] = UNDEF;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.rows[e1][x] != UNDEF {
                    let t = self.rows[e1][x];
                    self.merge(f1, t);
                } else if self.rows[f1][x ^ 1] != UNDEF {
                    let t = self.rows[f1][x ^ 1];
                    self.merge(e1, t);
                } else {
                    self.set(e1, x, f1);
                }
            }
        }
        self.queue.clear();
    }

    /// Trace `w` from `c` in both directions; close a single gap or report
    /// a coincidence. With `fill`, larger gaps are filled by defining new
    /// cosets; without it the scan just stops.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> std::result::Result<(), Stop> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.rows[f][w[i as usize]] != UNDEF {
                f = self.rows[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.rows[b][w[j as usize] ^ 1] != UNDEF {
                b = self.rows[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, w[i as usize], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn scan_relator(&mut self, c: usize, k: usize, fill: bool) -> std::result::Result<(), Stop> {
        let r = std::mem::take(&mut self.relators[k]);
        let out = self.scan(c, &r, fill);
        self.relators[k] = r;
        out
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let d = self.rows[c][x];
            if d == UNDEF {
                continue;
            }
            for k in 0..self.cycles_by_col[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.cycles_by_col[x][k]);
                let _ = self.scan(c, &w, false);
                self.cycles_by_col[x][k] = w;
            }
            if !self.is_live(d) {
                continue;
            }
            let y = x ^ 1;
            for k in 0..self.cycles_by_col[y].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = std::mem::take(&mut self.cycles_by_col[y][k]);
                let _ = self.scan(d, &w, false);
                self.cycles_by_col[y][k] = w;
            }
        }
    }

    /// Deduction-only pass over every live coset.
    fn lookahead(&mut self) {
        for c in 0..self.rows.len() {
            for k in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan_relator(c, k, false);
            }
        }
        if self.record {
            self.process_deductions();
        }
    }

    /// Drop dead rows, renumbering live cosets in increasing order.
    /// Returns the map from old to new numbers.
    fn compact(&mut self) -> Vec<usize> {
        let mut new_of = vec![UNDEF; self.rows.len()];
        let mut next = 0;
        for c in 0..self.rows.len() {
            if self.is_live(c) {
                new_of[c] = next;
                next += 1;
            }
        }
        let old_rows = std::mem::take(&mut self.rows);
        self.rows = old_rows
            .into_iter()
            .enumerate()
            .filter(|(c, _)| new_of[*c] != UNDEF)
            .map(|(_, r)| r.into_iter().map(|d| if d == UNDEF { UNDEF } else { new_of[d] }).collect())
            .collect();
        self.parent = (0..self.rows.len()).collect();
        self.live = self.rows.len();
        let pending = std::mem::take(&mut self.deductions);
        self.deductions = pending
            .into_iter()
            .filter(|&(c, _)| new_of[c] != UNDEF)
            .map(|(c, x)| (new_of[c], x))
            .collect();
        new_of
    }

    /// Try to recover space when the budget is hit. Returns the renumbering,
    /// or `None` when nothing could be freed.
    fn recover(&mut self) -> Option<Vec<usize>> {
        if self.live == self.rows.len() {
            self.lookahead();
        }
        if self.live == self.rows.len() {
            return None;
        }
        Some(self.compact())
    }

    fn budget_error(&self) -> Error {
        Error::BudgetExceeded { what: "coset", limit: self.max }
    }

    fn run_hlt(&mut self, subgroup: &[Vec<Letter>]) -> Result<()> {
        let subgroup: Vec<Vec<usize>> = subgroup.iter().map(|w| w.iter().map(|&l| col(l)).collect()).collect();
        'retry: loop {
            for w in &subgroup {
                if self.scan(0, w, true).is_err() {
                    if self.recover().is_none() {
                        return Err(self.budget_error());
                    }
                    continue 'retry;
                }
            }
            break;
        }
        let mut c = 0;
        'outer: while c < self.rows.len() {
            let mut stopped = !self.is_live(c);
            if !stopped {
                for k in 0..self.relators.len() {
                    if !self.is_live(c) {
                        break;
                    }
                    if self.scan_relator(c, k, true).is_err() {
                        stopped = true;
                        break;
                    }
                }
                if !stopped {
                    stopped = !self.fill_row(c);
                }
                if stopped && self.is_live(c) {
                    match self.recover() {
                        Some(map) => {
                            c = resume_at(c, &map, self.rows.len());
                            continue 'outer;
                        }
                        None => return Err(self.budget_error()),
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Define every missing entry of row `c`; false when out of budget.
    fn fill_row(&mut self, c: usize) -> bool {
        for x in 0..self.ncols {
            if !self.is_live(c) {
                return true;
            }
            if self.rows[c][x] == UNDEF {
                if self.define(c, x).is_err() {
                    return false;
                }
                if self.record {
                    self.process_deductions();
                }
            }
        }
        true
    }

    fn run_felsch(&mut self, subgroup: &[Vec<Letter>]) -> Result<()> {
        let subgroup: Vec<Vec<usize>> = subgroup.iter().map(|w| w.iter().map(|&l| col(l)).collect()).collect();
        'retry: loop {
            for w in &subgroup {
                if self.scan(0, w, true).is_err() {
                    if self.recover().is_none() {
                        return Err(self.budget_error());
                    }
                    continue 'retry;
                }
                self.process_deductions();
            }
            break;
        }
        let mut c = 0;
        while c < self.rows.len() {
            if self.is_live(c) && !self.fill_row(c) {
                match self.recover() {
                    Some(map) => {
                        c = resume_at(c, &map, self.rows.len());
                        continue;
                    }
                    None => return Err(self.budget_error()),
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn finish(mut self) -> CosetTable {
        self.compact();
        CosetTable { generators: self.ncols / 2, rows: self.rows }
    }
}

/// First surviving coset at or after `c`, in the new numbering.
fn resume_at(c: usize, map: &[usize], len: usize) -> usize {
    map[c.min(map.len())..].iter().find(|&&m| m != UNDEF).copied().unwrap_or(len)
}
