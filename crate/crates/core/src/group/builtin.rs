//! Built-in infinite groups (and their congruence quotients) with typed
//! tuple normal forms.

use std::collections::BTreeSet;

use super::{format_tuple, paired_generators, parse_tuple, Element, Generator, Group, GroupKind};
use crate::error::{Error, Result};

const AXIS_SYMBOLS: [char; 6] = ['a', 'b', 'c', 'd', 'f', 'g'];

fn reduce_mod(x: i64, modulus: Option<u64>) -> i64 {
    match modulus {
        Some(m) => x.rem_euclid(m as i64),
        None => x,
    }
}

/// Free group of rank `k` on letters `a, b, c, …` (inverses uppercase).
/// Normal forms are freely reduced words.
#[derive(Debug, Clone)]
pub struct FreeGroup {
    name: String,
    rank: usize,
    gens: Vec<Generator>,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        assert!((1..=6).contains(&rank), "free group rank must be in 1..=6");
        let symbols: Vec<(char, bool)> = AXIS_SYMBOLS[..rank].iter().map(|&c| (c, false)).collect();
        FreeGroup { name: format!("f{rank}"), rank, gens: paired_generators(&symbols) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn reduce_into(&self, out: &mut Vec<u8>, s: u8) {
        if let Some(&last) = out.last() {
            if self.gens[last as usize].inverse == s as usize {
                out.pop();
                return;
            }
        }
        out.push(s);
    }
}

impl Group for FreeGroup {
    fn name(&self) -> &str {
        &self.name
    }
    fn kind(&self) -> GroupKind {
        GroupKind::Free { rank: self.rank }
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Word(Vec::new())
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        let Element::Word(w) = g else { panic!("free group element expected") };
        let mut out = w.clone();
        self.reduce_into(&mut out, s as u8);
        Element::Word(out)
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        let (Element::Word(a), Element::Word(b)) = (g, h) else { panic!("free group element expected") };
        let mut out = a.clone();
        for &s in b {
            self.reduce_into(&mut out, s);
        }
        Element::Word(out)
    }
    fn inverse(&self, g: &Element) -> Element {
        let Element::Word(w) = g else { panic!("free group element expected") };
        Element::Word(w.iter().rev().map(|&s| self.gens[s as usize].inverse as u8).collect())
    }
    fn word_of(&self, g: &Element) -> Vec<usize> {
        let Element::Word(w) = g else { panic!("free group element expected") };
        w.iter().map(|&s| s as usize).collect()
    }
    fn format(&self, g: &Element) -> String {
        self.format_word(&self.word_of(g))
    }
    fn parse(&self, s: &str) -> Result<Element> {
        Ok(self.normalize(&self.parse_word(s)?))
    }
}

/// ℤᵈ, or (ℤ/m)ᵈ when a modulus is set, with the standard basis as
/// generators `a, b, …`.
#[derive(Debug, Clone)]
pub struct FreeAbelianGroup {
    name: String,
    dim: usize,
    modulus: Option<u64>,
    gens: Vec<Generator>,
}

impl FreeAbelianGroup {
    pub fn new(dim: usize, modulus: Option<u64>) -> Self {
        assert!((1..=6).contains(&dim), "dimension must be in 1..=6");
        let involutive = modulus == Some(2);
        let symbols: Vec<(char, bool)> =
            AXIS_SYMBOLS[..dim].iter().map(|&c| (c, involutive)).collect();
        let name = match modulus {
            None if dim == 1 => "z".to_string(),
            None => format!("z{dim}"),
            Some(m) => format!("z{dim}-mod{m}"),
        };
        FreeAbelianGroup { name, dim, modulus, gens: paired_generators(&symbols) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    fn axis(&self, s: usize) -> (usize, i64) {
        let gen = &self.gens[s];
        let axis = AXIS_SYMBOLS
            .iter()
            .position(|&c| c == gen.symbol.to_ascii_lowercase())
            .expect("axis symbol");
        let sign = if gen.symbol.is_ascii_uppercase() { -1 } else { 1 };
        (axis, sign)
    }

    pub fn element(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim);
        Element::Ints(coords.iter().map(|&x| reduce_mod(x, self.modulus)).collect())
    }
}

impl Group for FreeAbelianGroup {
    fn name(&self) -> &str {
        &self.name
    }
    fn kind(&self) -> GroupKind {
        GroupKind::FreeAbelian { dim: self.dim, modulus: self.modulus }
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Ints(vec![0; self.dim])
    }
    fn order(&self) -> Option<usize> {
        self.modulus.map(|m| (m as usize).pow(self.dim as u32))
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        let (axis, sign) = self.axis(s);
        let mut v = g.ints().to_vec();
        v[axis] = reduce_mod(v[axis] + sign, self.modulus);
        Element::Ints(v)
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        let v = g.ints().iter().zip(h.ints()).map(|(a, b)| reduce_mod(a + b, self.modulus)).collect();
        Element::Ints(v)
    }
    fn inverse(&self, g: &Element) -> Element {
        Element::Ints(g.ints().iter().map(|&a| reduce_mod(-a, self.modulus)).collect())
    }
    fn word_of(&self, g: &Element) -> Vec<usize> {
        let mut word = Vec::new();
        for (axis, &x) in g.ints().iter().enumerate() {
            let sym = AXIS_SYMBOLS[axis];
            let (s, n) = if x >= 0 {
                (sym, x)
            } else {
                (sym.to_ascii_uppercase(), -x)
            };
            let idx = self.generator_index(s).unwrap_or_else(|| self.generator_index(sym).unwrap());
            word.extend(std::iter::repeat_n(idx, n as usize));
        }
        word
    }
    fn format(&self, g: &Element) -> String {
        format_tuple(g.ints())
    }
    fn parse(&self, s: &str) -> Result<Element> {
        if s.trim_start().starts_with('(') {
            let v = parse_tuple(s)?;
            if v.len() != self.dim {
                return Err(Error::Parse(format!("expected {} coordinates in {s:?}", self.dim)));
            }
            Ok(self.element(&v))
        } else {
            Ok(self.normalize(&self.parse_word(s)?))
        }
    }
}

/// Integer Heisenberg group of unipotent 3×3 matrices, elements written
/// `(a, b, c)` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`;
/// generators `x = (1,0,0)` and `y = (0,1,0)`. With a modulus `m` this is
/// the Heisenberg group over ℤ/m.
#[derive(Debug, Clone)]
pub struct HeisenbergGroup {
    name: String,
    modulus: Option<u64>,
    gens: Vec<Generator>,
}

impl HeisenbergGroup {
    pub fn new(modulus: Option<u64>) -> Self {
        let involutive = modulus == Some(2);
        let gens = paired_generators(&[('x', involutive), ('y', involutive)]);
        let name = match modulus {
            None => "heisenberg".to_string(),
            Some(m) => format!("heis-mod{m}"),
        };
        HeisenbergGroup { name, modulus, gens }
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn element(&self, a: i64, b: i64, c: i64) -> Element {
        Element::Ints(vec![
            reduce_mod(a, self.modulus),
            reduce_mod(b, self.modulus),
            reduce_mod(c, self.modulus),
        ])
    }

    fn mul_raw(&self, g: &[i64], h: &[i64]) -> Element {
        self.element(g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])
    }
}

impl Group for HeisenbergGroup {
    fn name(&self) -> &str {
        &self.name
    }
    fn kind(&self) -> GroupKind {
        GroupKind::Heisenberg { modulus: self.modulus }
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Ints(vec![0, 0, 0])
    }
    fn order(&self) -> Option<usize> {
        self.modulus.map(|m| (m as usize).pow(3))
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        let sym = self.gens[s].symbol;
        let h: [i64; 3] = match sym {
            'x' => [1, 0, 0],
            'X' => [-1, 0, 0],
            'y' => [0, 1, 0],
            'Y' => [0, -1, 0],
            _ => unreachable!(),
        };
        self.mul_raw(g.ints(), &h)
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        self.mul_raw(g.ints(), h.ints())
    }
    fn inverse(&self, g: &Element) -> Element {
        let v = g.ints();
        // (a,b,c)^{-1} = (-a, -b, ab - c)
        self.element(-v[0], -v[1], v[0] * v[1] - v[2])
    }
    fn word_of(&self, g: &Element) -> Vec<usize> {
        // (a,b,c) = x^a y^b z^c with z = [x,y] = x y X Y = (0,0,1)
        let v = g.ints();
        let ix = self.generator_index('x').unwrap();
        let iy = self.generator_index('y').unwrap();
        let pick = |s: char, fallback: usize| self.generator_index(s).unwrap_or(fallback);
        let (ixi, iyi) = (pick('X', ix), pick('Y', iy));
        let c_adj = v[2] - v[0] * v[1];
        let mut word = Vec::new();
        let power = |word: &mut Vec<usize>, pos: usize, neg: usize, n: i64| {
            let (s, k) = if n >= 0 { (pos, n) } else { (neg, -n) };
            word.extend(std::iter::repeat_n(s, k as usize));
        };
        power(&mut word, ix, ixi, v[0]);
        power(&mut word, iy, iyi, v[1]);
        let (z, zi) = (vec![ix, iy, ixi, iyi], vec![iy, ix, iyi, ixi]);
        let reps = if c_adj >= 0 { (&z, c_adj) } else { (&zi, -c_adj) };
        for _ in 0..reps.1 {
            word.extend_from_slice(reps.0);
        }
        word
    }
    fn format(&self, g: &Element) -> String {
        format_tuple(g.ints())
    }
    fn parse(&self, s: &str) -> Result<Element> {
        if s.trim_start().starts_with('(') {
            let v = parse_tuple(s)?;
            if v.len() != 3 {
                return Err(Error::Parse(format!("expected (a,b,c), got {s:?}")));
            }
            Ok(self.element(v[0], v[1], v[2]))
        } else {
            Ok(self.normalize(&self.parse_word(s)?))
        }
    }
}

/// Lamplighter group ℤ/2 ≀ ℤ with generators `t`, `T` (move the lighter)
/// and the involution `a` (toggle the lamp under the lighter).
/// Normal form: finite set of lit lamps plus the lighter position.
#[derive(Debug, Clone)]
pub struct LamplighterGroup {
    gens: Vec<Generator>,
}

impl Default for LamplighterGroup {
    fn default() -> Self {
        Self::new()
    }
}

impl LamplighterGroup {
    pub fn new() -> Self {
        LamplighterGroup { gens: paired_generators(&[('t', false), ('a', true)]) }
    }
}

fn toggle(lamps: &mut BTreeSet<i64>, at: i64) {
    if !lamps.remove(&at) {
        lamps.insert(at);
    }
}

impl Group for LamplighterGroup {
    fn name(&self) -> &str {
        "lamplighter"
    }
    fn kind(&self) -> GroupKind {
        GroupKind::Lamplighter
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Lamp { lamps: BTreeSet::new(), pos: 0 }
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        let Element::Lamp { lamps, pos } = g else { panic!("lamplighter element expected") };
        let mut lamps = lamps.clone();
        let mut pos = *pos;
        match self.gens[s].symbol {
            't' => pos += 1,
            'T' => pos -= 1,
            _ => toggle(&mut lamps, pos),
        }
        Element::Lamp { lamps, pos }
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        let (Element::Lamp { lamps: l1, pos: p1 }, Element::Lamp { lamps: l2, pos: p2 }) = (g, h) else {
            panic!("lamplighter element expected")
        };
        let mut lamps = l1.clone();
        for &x in l2 {
            toggle(&mut lamps, p1 + x);
        }
        Element::Lamp { lamps, pos: p1 + p2 }
    }
    fn inverse(&self, g: &Element) -> Element {
        let Element::Lamp { lamps, pos } = g else { panic!("lamplighter element expected") };
        Element::Lamp { lamps: lamps.iter().map(|x| x - pos).collect(), pos: -pos }
    }
    fn word_of(&self, g: &Element) -> Vec<usize> {
        let Element::Lamp { lamps, pos } = g else { panic!("lamplighter element expected") };
        let (t, tt, a) = (0usize, 1usize, 2usize);
        let mut word = Vec::new();
        let mut cur = 0i64;
        let walk = |word: &mut Vec<usize>, from: i64, to: i64| {
            if to >= from {
                word.extend(std::iter::repeat_n(t, (to - from) as usize));
            } else {
                word.extend(std::iter::repeat_n(tt, (from - to) as usize));
            }
        };
        for &x in lamps {
            walk(&mut word, cur, x);
            word.push(a);
            cur = x;
        }
        walk(&mut word, cur, *pos);
        word
    }
    fn format(&self, g: &Element) -> String {
        let Element::Lamp { lamps, pos } = g else { panic!("lamplighter element expected") };
        let parts: Vec<String> = lamps.iter().map(|x| x.to_string()).collect();
        format!("[{}]@{}", parts.join(","), pos)
    }
    fn parse(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('[') {
            let (lamps_str, pos_str) = rest
                .split_once("]@")
                .ok_or_else(|| Error::Parse(format!("expected [l1,l2,..]@pos, got {s:?}")))?;
            let mut lamps = BTreeSet::new();
            for x in lamps_str.split(',').filter(|x| !x.trim().is_empty()) {
                let v: i64 = x.trim().parse().map_err(|e| Error::Parse(format!("bad lamp {x:?}: {e}")))?;
                lamps.insert(v);
            }
            let pos = pos_str.trim().parse().map_err(|e| Error::Parse(format!("bad position: {e}")))?;
            Ok(Element::Lamp { lamps, pos })
        } else {
            Ok(self.normalize(&self.parse_word(s)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_commutator_is_central_generator() {
        let h = HeisenbergGroup::new(None);
        let z = h.parse("xyXY").unwrap();
        assert_eq!(z, h.element(0, 0, 1));
        let g = h.element(2, -3, 5);
        assert_eq!(h.normalize(&h.word_of(&g)), g);
        assert_eq!(h.mul(&g, &h.inverse(&g)), h.identity());
    }

    #[test]
    fn lamplighter_words_round_trip() {
        let l = LamplighterGroup::new();
        let g = l.parse("[-2,0,3]@1").unwrap();
        assert_eq!(l.normalize(&l.word_of(&g)), g);
        assert_eq!(l.format(&g), "[-2,0,3]@1");
        let h = l.parse("tatTTa").unwrap();
        assert_eq!(l.mul(&g, &h), l.normalize(&[l.word_of(&g), l.word_of(&h)].concat()));
    }

    #[test]
    fn modular_free_abelian_wraps() {
        let z = FreeAbelianGroup::new(2, Some(4));
        let g = z.parse("AAAb").unwrap();
        assert_eq!(g, Element::Ints(vec![1, 1]));
        assert_eq!(z.order(), Some(16));
    }

    #[test]
    fn free_group_reduces() {
        let f = FreeGroup::new(2);
        let g = f.parse("abBA").unwrap();
        assert_eq!(g, f.identity());
        assert_eq!(f.format(&f.parse("aabBb").unwrap()), "aab");
    }
}
