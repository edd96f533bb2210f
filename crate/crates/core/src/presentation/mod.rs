//! Finite group presentations: words, parsing, abelianization, finite abelian
//! quotients and Reidemeister-Schreier rewriting.

mod abelian;
mod nielsen;
mod parse;
mod quotient;
mod rewrite;
mod word;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

pub use abelian::{abelianize, betti_numbers, mod_p_rank, AbelianStructure, BettiNumbers};
pub use nielsen::{normalize_exponent_sum, NielsenMove, NormalizedPresentation};
pub use parse::{parse_presentation, ParsedPresentation};
pub use quotient::{make_quotient, FiniteAbelianQuotient};
pub use rewrite::{reidemeister_schreier, reidemeister_schreier_with, CosetTable, SubgroupPresentation, TransversalStrategy};
pub use word::{free_reduce, Letter, Word};

use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

/// Generators and cyclically reduced relators of a finitely presented group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates names, cyclically reduces relators and drops those that
    /// become trivial.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        Self::with_warnings(generators, relators).map(|(p, _)| p)
    }

    pub fn with_warnings(generators: Vec<String>, relators: Vec<Word>) -> Result<(Self, Vec<String>)> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        let mut warnings = Vec::new();
        let mut kept = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_generator().filter(|&g| g >= n) {
                return Err(Error::GeneratorIndex { index: g, count: n });
            }
            let r = Word::free_reduce(r.letters().iter().copied()).cyclically_reduce();
            if r.is_empty() {
                let msg = format!("relator {i} is trivial after reduction and was dropped");
                log::warn!("{msg}");
                warnings.push(msg);
            } else {
                kept.push(r);
            }
        }
        Ok((
            Presentation {
                generators,
                relators: kept,
            },
            warnings,
        ))
    }

    /// Free group on the given generator names.
    pub fn free(generators: Vec<String>) -> Result<Self> {
        Self::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Number of generators minus number of relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// Relators x generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let n = self.generator_count();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        IntMatrix::from_rows_with_cols(&rows, n).expect("rows have generator count entries")
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.render(&self.generators)
    }

    /// Renders in the `.fp` input format.
    pub fn to_fp(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        if rels.is_empty() {
            return format!("< {} | >", self.generators.join(", "));
        }
        format!("< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fp())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fp())
    }
}

impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s).map(|p| p.presentation)
    }
}
