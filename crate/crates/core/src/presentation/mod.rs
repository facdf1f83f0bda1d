//! Free-group words, finitely presented groups, Fox calculus and index-2
//! Reidemeister–Schreier rewriting.

mod fox;
mod group_ring;
mod parse;
mod schreier;
mod word;

use std::fmt;

pub use fox::{fox_derivative, fox_expansion};
pub use group_ring::{augmentation, GroupRingElement};
pub use parse::{
    parse_generators, parse_presentation, parse_word, parse_word_token, statements, ParseError,
    ParseErrorKind, Statement, Token,
};
pub(crate) use parse::{is_identifier, presentation_from_statements};
pub use schreier::{index2_subgroup, SubgroupPresentation};
pub use word::{word_invert, word_multiply, FreeWord};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("generator names must be distinct identifiers (`{0}`)")]
    BadGeneratorName(String),
    #[error("parity vector has length {found}, expected {expected}")]
    ParityLength { expected: usize, found: usize },
    #[error("parity entries must be 0 or 1")]
    ParityValue,
    #[error("parity vector is all even; the kernel is not a proper subgroup")]
    NotProper,
    #[error("relator {index} has odd parity, so the parity map is not defined on the group")]
    OddRelator { index: usize },
    #[error("word has odd parity and does not lie in the index-2 subgroup")]
    OddWord,
}

/// A finitely presented group `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<FreeWord>) -> Result<Self, PresentationError> {
        for (k, name) in generator_names.iter().enumerate() {
            if !is_identifier(name) || generator_names[..k].contains(name) {
                return Err(PresentationError::BadGeneratorName(name.clone()));
            }
        }
        let count = generator_names.len();
        for r in &relators {
            if let Some(max) = r.max_generator() {
                if max >= count {
                    return Err(PresentationError::GeneratorOutOfRange { index: max, count });
                }
            }
        }
        Ok(Self { generator_names, relators })
    }

    /// Free group on generators named `x1, …, xd`.
    pub fn free(generator_count: usize) -> Self {
        let names = (1..=generator_count).map(|k| format!("x{k}")).collect();
        Self { generator_names: names, relators: Vec::new() }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    pub fn fox_derivative(&self, word: &FreeWord, generator: usize) -> Result<GroupRingElement, PresentationError> {
        fox_derivative(word, generator, self.generator_count())
    }

    /// Renders a word with this presentation's generator names.
    pub fn format_word(&self, word: &FreeWord) -> String {
        word.display_with(&self.generator_names).to_string()
    }

    /// Source text in the `gens` / `rel` format.
    pub fn to_source(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.generator_names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel {}", r.display_with(&self.generator_names))?;
        }
        Ok(())
    }
}
