//! Groups presented through a canonical normal-form interface.
//!
//! Every group exposes a symmetric generating set (each generator knows
//! the index of its inverse), an identity, right multiplication by a
//! generator, and full multiplication/inversion on normal forms. Equality
//! of normal forms is equality of group elements.

mod ball;
mod builtin;
mod finite;
pub mod registry;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ball::{
    ball, ball_with_cap, find_dead_ends, is_dead_end, triangle_dead_end_family, WordMetricBall,
    DEFAULT_BALL_CAP,
};
pub use builtin::{FreeAbelianGroup, FreeGroup, HeisenbergGroup, LamplighterGroup};
pub use finite::{FiniteGroup, DEFAULT_TABLE_CAP};

/// Canonical normal form of a group element.
///
/// Built-in groups use typed tuples; free and rewriting-backed groups use
/// reduced words over generator indices; finite groups use table indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Ints(Vec<i64>),
    Word(Vec<u8>),
    Lamp { lamps: BTreeSet<i64>, pos: i64 },
    Index(u32),
}

impl Element {
    pub fn ints(&self) -> &[i64] {
        match self {
            Element::Ints(v) => v,
            other => panic!("expected an integer tuple, got {other:?}"),
        }
    }
}

/// A generator symbol together with the index of its formal inverse.
/// Involutions may be self-paired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub symbol: char,
    pub inverse: usize,
}

/// Generating sets with each letter `c` followed by its inverse `C`
/// (uppercase), except where `self_inverse` marks an involution.
pub(crate) fn paired_generators(symbols: &[(char, bool)]) -> Vec<Generator> {
    let mut out = Vec::new();
    for &(c, self_inverse) in symbols {
        let i = out.len();
        if self_inverse {
            out.push(Generator { symbol: c, inverse: i });
        } else {
            out.push(Generator { symbol: c, inverse: i + 1 });
            out.push(Generator { symbol: c.to_ascii_uppercase(), inverse: i });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Free { rank: usize },
    FreeAbelian { dim: usize, modulus: Option<u64> },
    Heisenberg { modulus: Option<u64> },
    Lamplighter,
    FiniteCayleyTable { order: usize },
    RewritingBacked,
}

pub trait Group: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;
    fn kind(&self) -> GroupKind;
    fn generators(&self) -> &[Generator];
    fn identity(&self) -> Element;
    /// Right multiplication by the generator with the given index.
    fn mul_gen(&self, g: &Element, s: usize) -> Element;
    fn mul(&self, g: &Element, h: &Element) -> Element;
    fn inverse(&self, g: &Element) -> Element;
    /// Some word (generator indices) representing `g`.
    fn word_of(&self, g: &Element) -> Vec<usize>;
    fn format(&self, g: &Element) -> String;
    fn parse(&self, s: &str) -> Result<Element>;

    /// Group order when known to be finite.
    fn order(&self) -> Option<usize> {
        None
    }

    fn normalize(&self, word: &[usize]) -> Element {
        word.iter()
            .fold(self.identity(), |g, &s| self.mul_gen(&g, s))
    }

    fn generator_index(&self, symbol: char) -> Option<usize> {
        self.generators().iter().position(|g| g.symbol == symbol)
    }

    /// Parse a word of generator symbols; `e`, `1` and the empty string
    /// denote the empty word.
    fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "1" {
            return Ok(Vec::new());
        }
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                self.generator_index(c)
                    .ok_or_else(|| Error::Parse(format!("unknown generator symbol {c:?} in {s:?}")))
            })
            .collect()
    }

    fn generator_element(&self, s: usize) -> Element {
        self.mul_gen(&self.identity(), s)
    }

    fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|&s| self.generators()[s].symbol).collect()
    }
}

/// Parse a tuple literal such as `(2,-3)` or `(1, 0, 4)`.
pub(crate) fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a tuple like (1,2), got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {x:?}: {e}")))
        })
        .collect()
}

pub(crate) fn format_tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
