//! Finite quotients Ω = G/N used as tiling targets, and the nested
//! chains N₀ ⊇ N₁ ⊇ … they come from.
//!
//! Built-in chains reduce coordinates modulo bⁿ, which is a homomorphism
//! for ℤᵈ and for the Heisenberg group in (a, b, c) coordinates. Other
//! chains are given as explicit coset tables: coset lifts plus the right
//! action of every generator.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetTable {
    /// Lifts in the group's element syntax; index 0 must be the identity coset.
    pub lifts: Vec<String>,
    /// actions[s][c] = coset of lift(c)·s, for every generator index s.
    pub actions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainSpec {
    /// N_n = kernel of reduction mod baseⁿ.
    Powers { base: u64 },
    Tables { levels: Vec<CosetTable> },
}

enum Projection {
    Coords { modulus: i64, dim: usize },
    Table { lifts: Vec<Element>, actions: Vec<Vec<usize>> },
}

/// Ω = G/N with a fixed enumeration, a projection π and a section.
pub struct QuotientSet {
    group: Arc<dyn Group>,
    label: String,
    len: usize,
    proj: Projection,
}

impl QuotientSet {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn group(&self) -> &Arc<dyn Group> {
        &self.group
    }

    /// The chosen lift of coset `i`. For coordinate quotients cosets are
    /// enumerated lexicographically with representatives in [0, m).
    pub fn lift(&self, i: usize) -> Element {
        match &self.proj {
            Projection::Coords { modulus, dim } => {
                let mut v = vec![0i64; *dim];
                let mut x = i as i64;
                for c in v.iter_mut().rev() {
                    *c = x % modulus;
                    x /= modulus;
                }
                Element::Ints(v)
            }
            Projection::Table { lifts, .. } => lifts[i].clone(),
        }
    }

    pub fn project(&self, g: &Element) -> usize {
        match &self.proj {
            Projection::Coords { modulus, .. } => {
                g.ints().iter().fold(0usize, |acc, &x| acc * *modulus as usize + x.rem_euclid(*modulus) as usize)
            }
            Projection::Table { actions, .. } => {
                self.group.word_of(g).into_iter().fold(0, |c, s| actions[s][c])
            }
        }
    }

    /// The right action x·g.
    pub fn act(&self, x: usize, g: &Element) -> usize {
        match &self.proj {
            Projection::Coords { .. } => self.project(&self.group.mul(&self.lift(x), g)),
            Projection::Table { actions, .. } => {
                self.group.word_of(g).into_iter().fold(x, |c, s| actions[s][c])
            }
        }
    }

    /// table[k][x] = x·K[k].
    pub fn action_table(&self, k: &[Element]) -> Vec<Vec<usize>> {
        match &self.proj {
            Projection::Coords { .. } => {
                let lifts: Vec<Element> = (0..self.len).map(|x| self.lift(x)).collect();
                k.iter().map(|g| lifts.iter().map(|l| self.project(&self.group.mul(l, g))).collect()).collect()
            }
            Projection::Table { .. } => k.iter().map(|g| (0..self.len).map(|x| self.act(x, g)).collect()).collect(),
        }
    }

    /// Whether k ↦ xk is injective on `k` for every x ∈ Ω.
    pub fn injective_on(&self, k: &[Element]) -> bool {
        if let Projection::Coords { .. } = self.proj {
            // N is normal, so injectivity at the identity coset suffices
            let mut seen = vec![false; self.len];
            return k.iter().all(|g| !std::mem::replace(&mut seen[self.project(g)], true));
        }
        let table = self.action_table(k);
        let mut seen = vec![usize::MAX; self.len];
        (0..self.len).all(|x| {
            table.iter().all(|row| {
                let y = row[x];
                let fresh = seen[y] != x;
                seen[y] = x;
                fresh
            })
        })
    }
}

/// A nested family of finite-index subgroups with trivial intersection.
pub struct QuotientChain {
    group: Arc<dyn Group>,
    spec: ChainSpec,
    dim: usize,
}

impl QuotientChain {
    /// Reduction mod baseⁿ, for ℤᵈ and the Heisenberg group.
    pub fn powers(group: Arc<dyn Group>, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::Contract(format!("chain base {base} must be at least 2")));
        }
        let dim = match group.kind() {
            GroupKind::FreeAbelian { dim, modulus: None } => dim,
            GroupKind::Heisenberg { modulus: None } => 3,
            other => {
                return Err(Error::Contract(format!(
                    "no built-in quotient chain for {} ({other:?}); supply coset tables",
                    group.name()
                )))
            }
        };
        Ok(QuotientChain { group, spec: ChainSpec::Powers { base }, dim })
    }

    pub fn tables(group: Arc<dyn Group>, levels: Vec<CosetTable>) -> Result<Self> {
        Ok(QuotientChain { group, spec: ChainSpec::Tables { levels }, dim: 0 })
    }

    pub fn from_spec(group: Arc<dyn Group>, spec: ChainSpec) -> Result<Self> {
        match spec {
            ChainSpec::Powers { base } => Self::powers(group, base),
            ChainSpec::Tables { levels } => Self::tables(group, levels),
        }
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn group(&self) -> &Arc<dyn Group> {
        &self.group
    }

    /// Number of levels, if finite.
    pub fn levels(&self) -> Option<usize> {
        match &self.spec {
            ChainSpec::Powers { .. } => None,
            ChainSpec::Tables { levels } => Some(levels.len()),
        }
    }

    /// #(G/N_n) without building the quotient, if it fits in a usize.
    pub fn order(&self, n: usize) -> Option<usize> {
        match &self.spec {
            ChainSpec::Powers { base } => {
                let m = (*base as usize).checked_pow(n as u32)?;
                m.checked_pow(self.dim as u32)
            }
            ChainSpec::Tables { levels } => levels.get(n).map(|t| t.lifts.len()),
        }
    }

    pub fn level(&self, n: usize) -> Result<QuotientSet> {
        let group = self.group.clone();
        match &self.spec {
            ChainSpec::Powers { base } => {
                let len = self
                    .order(n)
                    .ok_or_else(|| Error::Resource(format!("quotient at level {n} is too large")))?;
                let m = base.pow(n as u32);
                Ok(QuotientSet {
                    label: format!("{} mod {m}", group.name()),
                    group,
                    len,
                    proj: Projection::Coords { modulus: m as i64, dim: self.dim },
                })
            }
            ChainSpec::Tables { levels } => {
                let t = levels
                    .get(n)
                    .ok_or_else(|| Error::OutOfRange(format!("chain has {} levels, asked for {n}", levels.len())))?;
                let len = t.lifts.len();
                if len == 0 || t.actions.len() != group.generators().len() {
                    return Err(Error::Parse(format!(
                        "coset table {n} needs lifts and one action row per generator ({})",
                        group.generators().len()
                    )));
                }
                for row in &t.actions {
                    let mut seen = vec![false; len];
                    if row.len() != len || !row.iter().all(|&c| c < len && !std::mem::replace(&mut seen[c], true)) {
                        return Err(Error::Parse(format!("coset table {n}: a generator row is not a permutation")));
                    }
                }
                let lifts = t.lifts.iter().map(|s| group.parse(s)).collect::<Result<Vec<_>>>()?;
                let q = QuotientSet {
                    label: format!("{} table level {n}", group.name()),
                    group,
                    len,
                    proj: Projection::Table { lifts, actions: t.actions.clone() },
                };
                for i in 0..len {
                    if q.project(&q.lift(i)) != i {
                        return Err(Error::Contract(format!("coset table {n}: lift {i} projects elsewhere")));
                    }
                }
                Ok(q)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FreeAbelianGroup, HeisenbergGroup};

    #[test]
    fn coordinate_quotients() {
        let g: Arc<dyn Group> = Arc::new(FreeAbelianGroup::new(2, None));
        let chain = QuotientChain::powers(g.clone(), 2).unwrap();
        let q = chain.level(2).unwrap();
        assert_eq!(q.len(), 16);
        assert_eq!(q.lift(1), Element::Ints(vec![0, 1]));
        assert_eq!(q.lift(4), Element::Ints(vec![1, 0]));
        for i in 0..16 {
            assert_eq!(q.project(&q.lift(i)), i);
        }
        assert_eq!(q.project(&Element::Ints(vec![-1, 5])), 3 * 4 + 1);
        let e1 = Element::Ints(vec![1, 0]);
        assert_eq!(q.act(12, &e1), 0);
        assert!(q.injective_on(&[Element::Ints(vec![0, 0]), e1.clone()]));
        assert!(!q.injective_on(&[Element::Ints(vec![0, 0]), Element::Ints(vec![4, 0])]));
    }

    #[test]
    fn heisenberg_projection_is_a_homomorphism() {
        let g: Arc<dyn Group> = Arc::new(HeisenbergGroup::new(None));
        let q = QuotientChain::powers(g.clone(), 3).unwrap().level(1).unwrap();
        assert_eq!(q.len(), 27);
        let a = g.parse("(2,-1,5)").unwrap();
        let b = g.parse("(-4,7,1)").unwrap();
        assert_eq!(q.project(&g.mul(&a, &b)), q.act(q.project(&a), &b));
    }

    #[test]
    fn table_chains() {
        let g: Arc<dyn Group> = Arc::new(FreeAbelianGroup::new(1, None));
        // ℤ/3 with generator a (index 0) and its inverse A (index 1)
        let t = CosetTable {
            lifts: vec!["(0)".into(), "(1)".into(), "(2)".into()],
            actions: vec![vec![1, 2, 0], vec![2, 0, 1]],
        };
        let chain = QuotientChain::tables(g.clone(), vec![t.clone()]).unwrap();
        let q = chain.level(0).unwrap();
        assert_eq!(q.project(&Element::Ints(vec![-1])), 2);
        assert!(chain.level(1).is_err());
        let mut bad = t;
        bad.actions[0] = vec![1, 1, 0];
        assert!(QuotientChain::tables(g, vec![bad]).unwrap().level(0).is_err());
    }

    #[test]
    fn free_groups_have_no_builtin_chain() {
        let g: Arc<dyn Group> = Arc::new(crate::group::FreeGroup::new(2));
        assert!(matches!(QuotientChain::powers(g, 2), Err(Error::Contract(_))));
    }
}
