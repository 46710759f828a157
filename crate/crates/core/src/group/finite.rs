//! Finite groups as explicit tables over element indices.

use std::collections::HashMap;
use std::collections::VecDeque;

use super::{Element, Generator, Group, GroupKind};
use crate::error::{Error, Result};

/// Groups up to this order also carry a full multiplication table.
pub const DEFAULT_TABLE_CAP: usize = 2048;

/// A finite group enumerated from some source group by breadth-first
/// search. Element `0` is the identity; the enumeration is the BFS order
/// in generator declaration order.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    gens: Vec<Generator>,
    labels: Vec<String>,
    /// `right_gen[s][i]` = index of `element_i · s`.
    right_gen: Vec<Vec<u32>>,
    /// BFS tree: `(parent, generator)` for every non-identity element.
    parent: Vec<(u32, u32)>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Enumerate a finite group given by any [`Group`] implementation.
    /// Fails with a resource error beyond `max_order` elements.
    pub fn from_group(source: &dyn Group, max_order: usize) -> Result<Self> {
        Self::from_group_with_table_cap(source, max_order, DEFAULT_TABLE_CAP)
    }

    pub fn from_group_with_table_cap(
        source: &dyn Group,
        max_order: usize,
        table_cap: usize,
    ) -> Result<Self> {
        let gens = source.generators().to_vec();
        let mut index: HashMap<Element, u32> = HashMap::new();
        let mut elems = vec![source.identity()];
        index.insert(source.identity(), 0);
        let mut parent = vec![(0u32, u32::MAX)];
        let mut queue = VecDeque::from([0u32]);
        while let Some(i) = queue.pop_front() {
            for s in 0..gens.len() {
                let h = source.mul_gen(&elems[i as usize], s);
                if !index.contains_key(&h) {
                    if elems.len() >= max_order {
                        return Err(Error::Resource(format!(
                            "group {} has more than {max_order} elements",
                            source.name()
                        )));
                    }
                    let j = elems.len() as u32;
                    index.insert(h.clone(), j);
                    elems.push(h);
                    parent.push((i, s as u32));
                    queue.push_back(j);
                }
            }
        }
        let n = elems.len();
        let right_gen: Vec<Vec<u32>> = (0..gens.len())
            .map(|s| elems.iter().map(|g| index[&source.mul_gen(g, s)]).collect())
            .collect();
        let inverse: Vec<u32> = elems.iter().map(|g| index[&source.inverse(g)]).collect();
        let labels = elems.iter().map(|g| source.format(g)).collect();
        let mut group = FiniteGroup {
            name: source.name().to_string(),
            gens,
            labels,
            right_gen,
            parent,
            table: None,
            inverse,
        };
        if n <= table_cap {
            let mut table = vec![0u32; n * n];
            for (i, g) in elems.iter().enumerate() {
                for (j, h) in elems.iter().enumerate() {
                    table[i * n + j] = index[&source.mul(g, h)];
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn right_gen(&self, i: usize, s: usize) -> usize {
        self.right_gen[s][i] as usize
    }

    /// Indices of one generator from each inverse pair.
    pub fn primary_generators(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&s| self.gens[s].inverse >= s).collect()
    }

    /// Product of element indices.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.len() + j] as usize,
            None => self.word_idx(j).into_iter().fold(i, |acc, s| self.right_gen(acc, s)),
        }
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    /// A word for the element reached along the BFS tree.
    pub fn word_idx(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while i != 0 {
            let (p, s) = self.parent[i];
            word.push(s as usize);
            i = p as usize;
        }
        word.reverse();
        word
    }

    pub fn pow_idx(&self, i: usize, mut e: u64) -> usize {
        let mut base = i;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn commutator_idx(&self, a: usize, b: usize) -> usize {
        // [a,b] = a^{-1} b^{-1} a b
        let ai = self.inv_idx(a);
        let bi = self.inv_idx(b);
        self.mul_idx(self.mul_idx(ai, bi), self.mul_idx(a, b))
    }

    fn idx(g: &Element) -> usize {
        match g {
            Element::Index(i) => *i as usize,
            other => panic!("finite group element expected, got {other:?}"),
        }
    }
}

impl Group for FiniteGroup {
    fn name(&self) -> &str {
        &self.name
    }
    fn kind(&self) -> GroupKind {
        GroupKind::FiniteCayleyTable { order: self.len() }
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Index(0)
    }
    fn order(&self) -> Option<usize> {
        Some(self.len())
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        Element::Index(self.right_gen(Self::idx(g), s) as u32)
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        Element::Index(self.mul_idx(Self::idx(g), Self::idx(h)) as u32)
    }
    fn inverse(&self, g: &Element) -> Element {
        Element::Index(self.inv_idx(Self::idx(g)) as u32)
    }
    fn word_of(&self, g: &Element) -> Vec<usize> {
        self.word_idx(Self::idx(g))
    }
    fn format(&self, g: &Element) -> String {
        self.labels[Self::idx(g)].clone()
    }
    fn parse(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        if let Some(i) = self.labels.iter().position(|l| l == t) {
            return Ok(Element::Index(i as u32));
        }
        if let Some(rest) = t.strip_prefix('#') {
            let i: usize = rest.parse().map_err(|e| Error::Parse(format!("bad index {t:?}: {e}")))?;
            if i < self.len() {
                return Ok(Element::Index(i as u32));
            }
            return Err(Error::Parse(format!("index {i} out of range")));
        }
        Ok(self.normalize(&self.parse_word(t)?))
    }
}
