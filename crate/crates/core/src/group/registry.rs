//! Named built-in groups and JSON group descriptions.
//!
//! A registry file is a JSON object mapping names to entries of the form
//! `{"kind": "...", "params": {...}, "generators": [...]}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    paired_generators, Element, FiniteGroup, FreeAbelianGroup, FreeGroup, Generator, Group,
    GroupKind, HeisenbergGroup, LamplighterGroup,
};
use crate::error::{Error, Result};
use crate::rewriting::{triangle_presentation, Presentation, RewritingGroup};

/// Finite groups larger than this are refused unless a caller asks for
/// more explicitly.
pub const DEFAULT_MAX_ORDER: usize = 1 << 16;

/// Built-in names with a one-line description.
pub fn builtin_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("z", "integers, generator a"),
        ("z2", "Z^2, generators a b"),
        ("z3", "Z^3, generators a b c"),
        ("f2", "free group on a b"),
        ("f3", "free group on a b c"),
        ("heisenberg", "integer Heisenberg group, generators x y"),
        ("lamplighter", "Z/2 wr Z, generators t and the lamp a"),
        ("c2", "cyclic of order 2"),
        ("c3", "cyclic of order 3"),
        ("c4", "cyclic of order 4"),
        ("c8", "cyclic of order 8"),
        ("c9", "cyclic of order 9"),
        ("c2xc2", "Klein four group"),
        ("c3xc3", "elementary abelian of order 9"),
        ("d3", "dihedral of order 6, involutions a b"),
        ("d4", "dihedral of order 8, involutions a b"),
        ("q8", "quaternion group, generators i j"),
        ("heis-mod3", "Heisenberg group over Z/3 (order 27)"),
        ("heis-modN", "Heisenberg group over Z/N"),
        ("t33K", "triangle group <x,y | x^3, y^3, (xy)^K>, K >= 3"),
    ]
}

/// Finite built-ins grouped by the prime whose p-group they are.
pub fn finite_p_groups(p: u32) -> Vec<&'static str> {
    match p {
        2 => vec!["c2", "c4", "c2xc2", "c8", "d4", "q8"],
        3 => vec!["c3", "c9", "c3xc3", "heis-mod3"],
        _ => Vec::new(),
    }
}

/// Every finite built-in.
pub fn finite_builtins() -> Vec<&'static str> {
    vec!["c2", "c3", "c4", "c8", "c9", "c2xc2", "c3xc3", "d3", "d4", "q8", "heis-mod3"]
}

fn cyclic_product(name: &str) -> Option<(usize, u64)> {
    match name {
        "c2" => Some((1, 2)),
        "c3" => Some((1, 3)),
        "c4" => Some((1, 4)),
        "c8" => Some((1, 8)),
        "c9" => Some((1, 9)),
        "c2xc2" => Some((2, 2)),
        "c3xc3" => Some((2, 3)),
        _ => None,
    }
}

fn dihedral(n: u32) -> Presentation {
    let mut p = Presentation::new(&["a", "b"], &[&format!("(ab)^{n}")]);
    p.involutions = vec!["a".into(), "b".into()];
    p
}

fn quaternion() -> Presentation {
    Presentation::new(&["i", "j"], &["i^4", "i^2J^2", "jij^-1i"])
}

/// Look up a built-in group by name. Finite groups come back as
/// [`FiniteGroup`] tables.
pub fn builtin(name: &str) -> Result<Arc<dyn Group>> {
    builtin_with_order_cap(name, DEFAULT_MAX_ORDER)
}

pub fn builtin_with_order_cap(name: &str, max_order: usize) -> Result<Arc<dyn Group>> {
    let g: Arc<dyn Group> = match name {
        "z" => Arc::new(FreeAbelianGroup::new(1, None)),
        "z2" => Arc::new(FreeAbelianGroup::new(2, None)),
        "z3" => Arc::new(FreeAbelianGroup::new(3, None)),
        "f2" => Arc::new(FreeGroup::new(2)),
        "f3" => Arc::new(FreeGroup::new(3)),
        "heisenberg" => Arc::new(HeisenbergGroup::new(None)),
        "lamplighter" => Arc::new(LamplighterGroup::new()),
        _ => return Ok(Arc::new(finite_or_triangle(name, max_order)?)),
    };
    Ok(g)
}

enum Special {
    Finite(FiniteGroup),
    Rewriting(RewritingGroup),
}

impl Special {
    fn inner(&self) -> &dyn Group {
        match self {
            Special::Finite(g) => g,
            Special::Rewriting(g) => g,
        }
    }
}

impl std::fmt::Debug for Special {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner().fmt(f)
    }
}

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*) -> $ret:ty;)*) => {
        $(fn $name(&self, $($arg: $ty),*) -> $ret { self.inner().$name($($arg),*) })*
    };
}

impl Group for Special {
    forward! {
        name() -> &str;
        kind() -> GroupKind;
        generators() -> &[Generator];
        identity() -> Element;
        mul_gen(g: &Element, s: usize) -> Element;
        mul(g: &Element, h: &Element) -> Element;
        inverse(g: &Element) -> Element;
        word_of(g: &Element) -> Vec<usize>;
        format(g: &Element) -> String;
        parse(s: &str) -> Result<Element>;
        order() -> Option<usize>;
    }
}

fn finite_or_triangle(name: &str, max_order: usize) -> Result<Special> {
    if let Some(k) = name.strip_prefix("t33") {
        let k: u32 = k.parse().map_err(|_| unknown(name))?;
        if k < 3 {
            return Err(Error::Contract(format!("triangle group needs k >= 3, got {k}")));
        }
        return Ok(Special::Rewriting(RewritingGroup::from_presentation(name, &triangle_presentation(k))?));
    }
    Ok(Special::Finite(finite_builtin(name, max_order)?))
}

/// A finite built-in as an explicit table.
pub fn finite_builtin(name: &str, max_order: usize) -> Result<FiniteGroup> {
    let mut g = if let Some((dim, m)) = cyclic_product(name) {
        FiniteGroup::from_group(&FreeAbelianGroup::new(dim, Some(m)), max_order)?
    } else if let Some(m) = name.strip_prefix("heis-mod") {
        let m: u64 = m.parse().map_err(|_| unknown(name))?;
        if m < 2 {
            return Err(Error::Contract("heis-modN needs N >= 2".into()));
        }
        FiniteGroup::from_group(&HeisenbergGroup::new(Some(m)), max_order)?
    } else {
        let pres = match name {
            "d3" => dihedral(3),
            "d4" => dihedral(4),
            "q8" => quaternion(),
            _ => return Err(unknown(name)),
        };
        FiniteGroup::from_group(&RewritingGroup::from_presentation(name, &pres)?, max_order)?
    };
    g.set_name(name);
    Ok(g)
}

fn unknown(name: &str) -> Error {
    Error::Parse(format!("unknown group {name:?}; run `groups` for the list"))
}

/// One registry file entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub generators: Vec<String>,
}

/// Groups loaded from a registry file, falling back to built-ins.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: BTreeMap<String, RegistryEntry>,
}

impl Registry {
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: BTreeMap<String, RegistryEntry> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("registry: {e}")))?;
        Ok(Registry { entries })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    pub fn entry(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.get(name)
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Group>> {
        match self.entries.get(name) {
            Some(e) => build_entry(name, e),
            None => builtin(name),
        }
    }
}

fn param_u64(params: &Value, key: &str) -> Result<Option<u64>> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| Error::Parse(format!("parameter {key:?} must be a nonnegative integer"))),
    }
}

fn build_entry(name: &str, e: &RegistryEntry) -> Result<Arc<dyn Group>> {
    let need = |key: &str| -> Result<u64> {
        param_u64(&e.params, key)?.ok_or_else(|| Error::Parse(format!("{name}: missing parameter {key:?}")))
    };
    let g: Arc<dyn Group> = match e.kind.as_str() {
        "free" => Arc::new(FreeGroup::new(need("rank")? as usize)),
        "free_abelian" => {
            Arc::new(FreeAbelianGroup::new(need("dim")? as usize, param_u64(&e.params, "modulus")?))
        }
        "heisenberg" => Arc::new(HeisenbergGroup::new(param_u64(&e.params, "modulus")?)),
        "lamplighter" => Arc::new(LamplighterGroup::new()),
        "rewriting_backed" => {
            let mut pres: Presentation = serde_json::from_value(e.params.clone())
                .map_err(|err| Error::Parse(format!("{name}: {err}")))?;
            if pres.generators.is_empty() {
                pres.generators = e.generators.clone();
            }
            Arc::new(RewritingGroup::from_presentation(name, &pres)?)
        }
        "finite_cayley_table" => {
            let table: Vec<Vec<u32>> = serde_json::from_value(e.params.get("table").cloned().unwrap_or(Value::Null))
                .map_err(|err| Error::Parse(format!("{name}: table: {err}")))?;
            let gens: Vec<u32> =
                serde_json::from_value(e.params.get("generator_elements").cloned().unwrap_or(Value::Null))
                    .map_err(|err| Error::Parse(format!("{name}: generator_elements: {err}")))?;
            let source = CayleyTable::new(name, table, &gens, &e.generators)?;
            let mut fg = FiniteGroup::from_group(&source, DEFAULT_MAX_ORDER)?;
            fg.set_name(name);
            Arc::new(fg)
        }
        other => return Err(Error::Parse(format!("{name}: unknown kind {other:?}"))),
    };
    Ok(g)
}

/// A finite group given by an explicit multiplication table with
/// identity 0; used only as a source for [`FiniteGroup`].
#[derive(Debug)]
struct CayleyTable {
    name: String,
    table: Vec<Vec<u32>>,
    gens: Vec<Generator>,
    gen_elems: Vec<u32>,
    inverse: Vec<u32>,
}

impl CayleyTable {
    fn new(name: &str, table: Vec<Vec<u32>>, gen_elems: &[u32], symbols: &[String]) -> Result<Self> {
        let n = table.len();
        let bad = |msg: &str| Error::Parse(format!("{name}: {msg}"));
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
            return Err(bad("table must be square with entries below its size"));
        }
        if (0..n).any(|i| table[0][i] as usize != i || table[i][0] as usize != i) {
            return Err(bad("element 0 must be the identity"));
        }
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            inverse[i] = (0..n as u32)
                .find(|&j| table[i][j as usize] == 0)
                .ok_or_else(|| bad("table has an element without inverse"))?;
        }
        if symbols.len() != gen_elems.len() || gen_elems.iter().any(|&g| g as usize >= n) {
            return Err(bad("one generator symbol per generator element is required"));
        }
        let mut spec = Vec::new();
        let mut elems = Vec::new();
        for (sym, &g) in symbols.iter().zip(gen_elems) {
            let c = sym.chars().next().filter(|c| c.is_ascii_lowercase() && sym.len() == 1);
            let c = c.ok_or_else(|| bad("generator symbols must be single lowercase letters"))?;
            let involution = inverse[g as usize] == g;
            spec.push((c, involution));
            elems.push(g);
            if !involution {
                elems.push(inverse[g as usize]);
            }
        }
        Ok(CayleyTable { name: name.into(), table, gens: paired_generators(&spec), gen_elems: elems, inverse })
    }

    fn idx(g: &Element) -> usize {
        match g {
            Element::Index(i) => *i as usize,
            other => panic!("table element expected, got {other:?}"),
        }
    }
}

impl Group for CayleyTable {
    fn name(&self) -> &str {
        &self.name
    }
    fn kind(&self) -> GroupKind {
        GroupKind::FiniteCayleyTable { order: self.table.len() }
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Index(0)
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        Element::Index(self.table[Self::idx(g)][self.gen_elems[s] as usize])
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        Element::Index(self.table[Self::idx(g)][Self::idx(h)])
    }
    fn inverse(&self, g: &Element) -> Element {
        Element::Index(self.inverse[Self::idx(g)])
    }
    fn word_of(&self, _g: &Element) -> Vec<usize> {
        unreachable!("table sources are only enumerated, never asked for words")
    }
    fn format(&self, g: &Element) -> String {
        format!("#{}", Self::idx(g))
    }
    fn parse(&self, s: &str) -> Result<Element> {
        Err(Error::Parse(format!("cannot parse {s:?} against a raw table")))
    }
}
