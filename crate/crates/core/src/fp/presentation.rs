use std::fmt;

use crate::braid::BraidWord;
use crate::error::{Error, ParseError, Result};
use crate::word::{self, DisplayWord, Letter};

/// A finite presentation `<g_1, ..., g_k | r_1, ..., r_m>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Vec<Letter>>,
}

impl Presentation {
    /// Relators are freely reduced; empty ones are dropped.
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Result<Presentation> {
        let mut out = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(l) = r.iter().find(|l| l.index() > generators) {
                return Err(Error::InvalidPresentation(format!(
                    "relator uses g{} but there are only {generators} generators",
                    l.index()
                )));
            }
            let r = word::reduce(r);
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(Presentation { generators, relators: out })
    }

    pub fn free(generators: usize) -> Presentation {
        Presentation { generators, relators: Vec::new() }
    }

    /// Artin's presentation of `B_n` on `n - 1` generators.
    pub fn braid_group(n: usize) -> Presentation {
        let relators = crate::braid::artin_relators(n)
            .into_iter()
            .map(|b| b.letters().to_vec())
            .collect();
        Presentation::new(n.saturating_sub(1), relators).expect("in range")
    }

    /// Presentation on the Artin generators with extra braid relators.
    pub fn braid_group_with(n: usize, extra: &[BraidWord]) -> Result<Presentation> {
        let mut p = Presentation::braid_group(n);
        for b in extra {
            if b.strands() != n {
                return Err(Error::StrandMismatch(n, b.strands()));
            }
        }
        p.relators.extend(extra.iter().map(|b| b.letters().to_vec()).filter(|r| !r.is_empty()));
        Ok(p)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    /// Parse `gens <k>` followed by one `g<k>` / `g<k>^-1` relator per line.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lno, header) = lines
            .next()
            .ok_or_else(|| ParseError::Format("empty presentation".into()))?;
        let generators = header
            .strip_prefix("gens")
            .map(str::trim)
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| ParseError::Line { line: lno, msg: "expected `gens <k>`".into() })?;
        let mut relators = Vec::new();
        for (lno, line) in lines {
            let r = word::parse_tokens(line, 'g')
                .map_err(|e| ParseError::Line { line: lno, msg: e.to_string() })?;
            relators.push(r);
        }
        Presentation::new(generators, relators)
    }

    /// Relator exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators];
                for l in r {
                    row[l.index() - 1] += l.sign();
                }
                row
            })
            .collect()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.generators)?;
        for r in &self.relators {
            writeln!(f, "{}", DisplayWord { word: r, prefix: 'g' })?;
        }
        Ok(())
    }
}
