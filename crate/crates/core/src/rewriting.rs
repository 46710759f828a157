//! Shortlex string rewriting with Knuth–Bendix completion.
//!
//! Letters are indices into an alphabet in which generator `c` is
//! immediately followed by its inverse `C` (uppercase); the declaration
//! order of letters is the shortlex precedence. Inverse rules `cC → ε`,
//! `Cc → ε` are added automatically.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{paired_generators, Element, Generator, Group, GroupKind};

pub type Word = Vec<u8>;

pub const DEFAULT_MAX_RULES: usize = 5000;
pub const DEFAULT_MAX_LEN: usize = 20;

/// Presentation file contents: generator symbols and relator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    /// Generators declared as involutions get no separate inverse letter.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub involutions: Vec<String>,
    /// Shortlex precedence of all letters (generators and inverses), e.g.
    /// `"xyXY"`. Defaults to each generator followed by its inverse.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    /// Generators spanning the word metric (with their inverses). The
    /// remaining generators are auxiliary letters that only help
    /// completion. Defaults to all generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_generators: Option<Vec<String>>,
}

impl Presentation {
    pub fn new(generators: &[&str], relators: &[&str]) -> Self {
        Presentation {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: relators.iter().map(|s| s.to_string()).collect(),
            involutions: Vec::new(),
            order: None,
            metric_generators: None,
        }
    }

    pub fn with_metric_generators(mut self, gens: &[&str]) -> Self {
        self.metric_generators = Some(gens.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn with_order(mut self, order: &str) -> Self {
        self.order = Some(order.to_string());
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("presentation: {e}")))
    }

    fn alphabet(&self) -> Result<Vec<Generator>> {
        let mut symbols = Vec::new();
        for g in &self.generators {
            let mut chars = g.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::Parse(format!("generator names must be single letters, got {g:?}")));
            };
            if !c.is_ascii_lowercase() {
                return Err(Error::Parse(format!("generator {c:?} must be a lowercase ASCII letter")));
            }
            symbols.push((c, self.involutions.iter().any(|i| i == g)));
        }
        let paired = paired_generators(&symbols);
        let Some(order) = &self.order else { return Ok(paired) };
        let letters: Vec<char> = order.chars().collect();
        let mut perm = Vec::with_capacity(paired.len());
        for &c in &letters {
            let i = paired
                .iter()
                .position(|g| g.symbol == c)
                .ok_or_else(|| Error::Parse(format!("order mentions unknown letter {c:?}")))?;
            if perm.contains(&i) {
                return Err(Error::Parse(format!("order repeats letter {c:?}")));
            }
            perm.push(i);
        }
        if perm.len() != paired.len() {
            return Err(Error::Parse(format!("order {order:?} must list all {} letters", paired.len())));
        }
        let position = |old: usize| perm.iter().position(|&p| p == old).unwrap();
        Ok(perm
            .iter()
            .map(|&old| Generator { symbol: paired[old].symbol, inverse: position(paired[old].inverse) })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    /// Completion stopped because a rule or length budget ran out.
    Incomplete { reason: String },
}

#[derive(Clone, Debug)]
pub struct RewritingSystem {
    alphabet: Vec<Generator>,
    rules: Vec<(Word, Word)>,
    /// Defining equations `w = ε` (relators and inverse pairs).
    axioms: Vec<Word>,
    status: Status,
}

/// Shortlex comparison of two words.
pub fn shortlex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn find(hay: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

impl RewritingSystem {
    /// Build a system from explicit rules, without completion. Each rule
    /// is oriented by shortlex; equal sides are dropped.
    pub fn from_rules(alphabet: Vec<Generator>, rules: &[(Word, Word)], axioms: Vec<Word>) -> Self {
        let rules = rules
            .iter()
            .filter(|(l, r)| l != r)
            .map(|(l, r)| if shortlex(l, r) == Ordering::Greater { (l.clone(), r.clone()) } else { (r.clone(), l.clone()) })
            .collect();
        RewritingSystem {
            alphabet,
            rules,
            axioms,
            status: Status::Incomplete { reason: "not completed".into() },
        }
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word(&self.alphabet, s)
    }

    pub fn format_word(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "e".into();
        }
        w.iter().map(|&c| self.alphabet[c as usize].symbol).collect()
    }

    pub fn inverse_word(&self, w: &[u8]) -> Word {
        w.iter().rev().map(|&c| self.alphabet[c as usize].inverse as u8).collect()
    }

    /// Rewrite to an irreducible word. On a complete system the result is
    /// the unique normal form.
    pub fn reduce(&self, w: &[u8]) -> Word {
        reduce_with(&self.rules, w)
    }

    /// Check every overlap and inclusion of rule left-hand sides whose
    /// combined word has length at most `max_len`, plus the defining
    /// equations. Returns the unresolved pairs of distinct normal forms.
    pub fn confluence_check(&self, max_len: usize) -> (bool, Vec<(Word, Word)>) {
        let mut bad = Vec::new();
        let mut seen = HashSet::new();
        let mut record = |a: Word, b: Word, bad: &mut Vec<(Word, Word)>| {
            let (a, b) = (self.reduce(&a), self.reduce(&b));
            if a != b && seen.insert((a.clone(), b.clone())) {
                bad.push((a, b));
            }
        };
        for ax in &self.axioms {
            record(ax.clone(), Vec::new(), &mut bad);
        }
        for (i, (l1, r1)) in self.rules.iter().enumerate() {
            for (j, (l2, r2)) in self.rules.iter().enumerate() {
                for (a, b, span) in critical_pairs(l1, r1, l2, r2, i == j) {
                    if span <= max_len {
                        record(a, b, &mut bad);
                    }
                }
            }
        }
        (bad.is_empty(), bad)
    }

    /// Enumerate irreducible words by length, up to `limit` words. Returns
    /// `None` if more than `limit` exist.
    pub fn count_normal_forms(&self, limit: usize) -> Option<usize> {
        let mut layer: Vec<Word> = vec![Vec::new()];
        let mut total = 1usize;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for w in &layer {
                for c in 0..self.alphabet.len() as u8 {
                    let mut v = w.clone();
                    v.push(c);
                    // a word is irreducible iff no lhs occurs in it; since w
                    // is irreducible only suffixes ending at c need checking
                    if self.rules.iter().all(|(l, _)| !v.ends_with(l)) {
                        next.push(v);
                    }
                }
            }
            total += next.len();
            if total > limit {
                return None;
            }
            layer = next;
        }
        Some(total)
    }
}

fn reduce_with(rules: &[(Word, Word)], w: &[u8]) -> Word {
    // Stack-based rewriting: push letters one by one and, after each push,
    // rewrite any lhs that became a suffix.
    let mut out: Word = Vec::with_capacity(w.len());
    let mut pending: Vec<u8> = w.iter().rev().copied().collect();
    while let Some(c) = pending.pop() {
        out.push(c);
        if let Some((l, r)) = rules.iter().find(|(l, _)| out.ends_with(l)) {
            out.truncate(out.len() - l.len());
            pending.extend(r.iter().rev());
        }
    }
    out
}

/// Critical pairs between `l1 → r1` and `l2 → r2`: proper overlaps where
/// a suffix of `l1` is a prefix of `l2`, and inclusions of `l2` in `l1`.
/// The third component is the length of the overlapped word.
fn critical_pairs(l1: &[u8], r1: &[u8], l2: &[u8], r2: &[u8], same: bool) -> Vec<(Word, Word, usize)> {
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            // word = l1 + l2[k..] = l1[..len-k] + l2
            let a = [r1, &l2[k..]].concat();
            let b = [&l1[..l1.len() - k], r2].concat();
            out.push((a, b, l1.len() + l2.len() - k));
        }
    }
    if !same {
        if let Some(pos) = find(l1, l2) {
            let b = [&l1[..pos], r2, &l1[pos + l2.len()..]].concat();
            out.push((r1.to_vec(), b, l1.len()));
        }
    }
    out
}

pub fn parse_word(alphabet: &[Generator], s: &str) -> Result<Word> {
    let t = s.trim();
    if t.is_empty() || t == "e" || t == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    parse_into(alphabet, &t.chars().filter(|c| !c.is_whitespace()).collect::<Vec<_>>(), &mut out, s)?;
    Ok(out)
}

/// Words over the alphabet, with commutator brackets `[u,v] = u v U V` and
/// integer powers `(u)^n`.
fn parse_into(alphabet: &[Generator], chars: &[char], out: &mut Word, src: &str) -> Result<()> {
    let inverse_of = |w: &[u8]| -> Word { w.iter().rev().map(|&c| alphabet[c as usize].inverse as u8).collect() };
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '[' | '(' => {
                let close = matching(chars, i).ok_or_else(|| Error::Parse(format!("unbalanced brackets in {src:?}")))?;
                let inner = &chars[i + 1..close];
                let mut piece = Vec::new();
                if c == '[' {
                    let comma = top_level_comma(inner).ok_or_else(|| Error::Parse(format!("commutator needs a comma in {src:?}")))?;
                    let (mut u, mut v) = (Vec::new(), Vec::new());
                    parse_into(alphabet, &inner[..comma], &mut u, src)?;
                    parse_into(alphabet, &inner[comma + 1..], &mut v, src)?;
                    piece.extend_from_slice(&u);
                    piece.extend_from_slice(&v);
                    piece.extend(inverse_of(&u));
                    piece.extend(inverse_of(&v));
                } else {
                    parse_into(alphabet, inner, &mut piece, src)?;
                }
                i = close + 1;
                let (exp, used) = parse_exponent(&chars[i..], src)?;
                i += used;
                let base = if exp < 0 { inverse_of(&piece) } else { piece };
                for _ in 0..exp.unsigned_abs() {
                    out.extend_from_slice(&base);
                }
            }
            _ => {
                let idx = alphabet
                    .iter()
                    .position(|g| g.symbol == c)
                    .ok_or_else(|| Error::Parse(format!("unknown letter {c:?} in {src:?}")))?;
                i += 1;
                let (exp, used) = parse_exponent(&chars[i..], src)?;
                i += used;
                let letter = if exp < 0 { alphabet[idx].inverse as u8 } else { idx as u8 };
                for _ in 0..exp.unsigned_abs() {
                    out.push(letter);
                }
            }
        }
    }
    Ok(())
}

fn parse_exponent(chars: &[char], src: &str) -> Result<(i64, usize)> {
    if chars.first() != Some(&'^') {
        return Ok((1, 0));
    }
    let mut j = 1;
    if chars.get(j) == Some(&'-') {
        j += 1;
    }
    while chars.get(j).is_some_and(|c| c.is_ascii_digit()) {
        j += 1;
    }
    let text: String = chars[1..j].iter().collect();
    let e = text.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {src:?}")))?;
    Ok((e, j))
}

fn matching(chars: &[char], open: usize) -> Option<usize> {
    let mut depth = 0;
    for (j, &c) in chars.iter().enumerate().skip(open) {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(j);
                }
            }
            _ => {}
        }
    }
    None
}

fn top_level_comma(chars: &[char]) -> Option<usize> {
    let mut depth = 0;
    for (j, &c) in chars.iter().enumerate() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => return Some(j),
            _ => {}
        }
    }
    None
}

/// Knuth–Bendix completion for the group presented by `pres`.
///
/// Pending equations are processed FIFO; after each new rule the system
/// is inter-reduced and all critical pairs with the new rule are queued.
/// Running out of `max_rules` or producing a rule longer than `max_len`
/// yields an incomplete system rather than an error.
pub fn knuth_bendix(pres: &Presentation, max_rules: usize, max_len: usize) -> Result<RewritingSystem> {
    let alphabet = pres.alphabet()?;
    let mut axioms = Vec::new();
    for (i, g) in alphabet.iter().enumerate() {
        axioms.push(vec![i as u8, g.inverse as u8]);
    }
    for r in &pres.relators {
        axioms.push(parse_word(&alphabet, r)?);
    }
    let mut queue: VecDeque<(Word, Word)> = axioms.iter().map(|w| (w.clone(), Vec::new())).collect();
    let mut rules: Vec<(Word, Word)> = Vec::new();
    let mut status = Status::Complete;

    while let Some((a, b)) = queue.pop_front() {
        let (a, b) = (reduce_with(&rules, &a), reduce_with(&rules, &b));
        if a == b {
            continue;
        }
        let (lhs, rhs) = if shortlex(&a, &b) == Ordering::Greater { (a, b) } else { (b, a) };
        if lhs.len() > max_len {
            status = Status::Incomplete { reason: format!("rule lhs longer than {max_len}") };
            continue;
        }
        if rules.len() >= max_rules {
            status = Status::Incomplete { reason: format!("more than {max_rules} rules") };
            break;
        }
        // Inter-reduce: rules whose lhs contains the new lhs go back to the
        // queue; right-hand sides are re-normalized.
        let new_rule = (lhs, rhs);
        let mut kept = Vec::with_capacity(rules.len() + 1);
        for (l, r) in rules.drain(..) {
            if find(&l, &new_rule.0).is_some() {
                queue.push_back((l, r));
            } else {
                kept.push((l, r));
            }
        }
        kept.push(new_rule.clone());
        rules = kept;
        for i in 0..rules.len() {
            let r = reduce_with(&rules, &rules[i].1);
            rules[i].1 = r;
        }
        let (nl, nr) = new_rule;
        for (l, r) in rules.clone() {
            for (a, b, _) in critical_pairs(&nl, &nr, &l, &r, l == nl) {
                queue.push_back((a, b));
            }
            if l != nl {
                for (a, b, _) in critical_pairs(&l, &r, &nl, &nr, false) {
                    queue.push_back((a, b));
                }
            }
        }
    }
    Ok(RewritingSystem { alphabet, rules, axioms, status })
}

/// Presentation of the triangle group ⟨x, y | x³, y³, (xy)^k⟩.
///
/// Shortlex completion over `x, X, y, Y` alone never terminates (the
/// rules form an infinite periodic family), so an auxiliary letter
/// `z = xy` is added. The word metric still uses `x, y` and inverses.
pub fn triangle_presentation(k: u32) -> Presentation {
    let zk = format!("z^{k}");
    Presentation::new(&["x", "y", "z"], &["xxx", "yyy", &zk, "xyZ"]).with_metric_generators(&["x", "y"])
}

/// A finitely presented group whose normal forms are shortlex-reduced
/// words of a (completed) rewriting system.
#[derive(Clone)]
pub struct RewritingGroup {
    name: String,
    system: RewritingSystem,
    /// Word-metric generators, re-indexed among themselves.
    gens: Vec<Generator>,
    /// Alphabet letter of each word-metric generator.
    letters: Vec<u8>,
}

impl fmt::Debug for RewritingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewritingGroup")
            .field("name", &self.name)
            .field("rules", &self.system.rules.len())
            .field("status", &self.system.status)
            .finish()
    }
}

impl RewritingGroup {
    /// Group whose word metric uses every letter of the alphabet.
    pub fn new(name: &str, system: RewritingSystem) -> Result<Self> {
        let letters: Vec<u8> = (0..system.alphabet.len() as u8).collect();
        Self::with_letters(name, system, letters)
    }

    fn with_letters(name: &str, system: RewritingSystem, letters: Vec<u8>) -> Result<Self> {
        if !system.is_complete() {
            return Err(Error::Contract(format!(
                "rewriting system for {name} is not complete ({:?})",
                system.status
            )));
        }
        let mut gens = Vec::with_capacity(letters.len());
        for &l in &letters {
            let g = &system.alphabet[l as usize];
            let inverse = letters.iter().position(|&m| m as usize == g.inverse).ok_or_else(|| {
                Error::Contract(format!("metric generator {:?} lacks its inverse", g.symbol))
            })?;
            gens.push(Generator { symbol: g.symbol, inverse });
        }
        Ok(RewritingGroup { name: name.to_string(), system, gens, letters })
    }

    pub fn from_presentation(name: &str, pres: &Presentation) -> Result<Self> {
        let system = knuth_bendix(pres, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN)?;
        let letters = match &pres.metric_generators {
            None => (0..system.alphabet.len() as u8).collect(),
            Some(names) => {
                let mut letters = Vec::new();
                for (i, g) in system.alphabet.iter().enumerate() {
                    let lower = g.symbol.to_ascii_lowercase().to_string();
                    if names.contains(&lower) {
                        letters.push(i as u8);
                    }
                }
                letters
            }
        };
        Self::with_letters(name, system, letters)
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    /// Shortest word in the metric generators equal to letter `c`.
    fn metric_word_for_letter(&self, c: u8) -> Vec<usize> {
        let target = self.system.reduce(&[c]);
        let mut layer: Vec<(Word, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
        let mut seen = HashSet::from([Vec::<u8>::new()]);
        loop {
            let mut next = Vec::new();
            for (w, path) in &layer {
                if *w == target {
                    return path.clone();
                }
                for (i, &l) in self.letters.iter().enumerate() {
                    let mut v = w.clone();
                    v.push(l);
                    let v = self.system.reduce(&v);
                    if seen.insert(v.clone()) {
                        let mut p = path.clone();
                        p.push(i);
                        next.push((v, p));
                    }
                }
            }
            assert!(!next.is_empty(), "letter not in the subgroup spanned by metric generators");
            layer = next;
        }
    }

    fn word(g: &Element) -> &[u8] {
        match g {
            Element::Word(w) => w,
            other => panic!("rewriting-backed element expected, got {other:?}"),
        }
    }
}

impl Group for RewritingGroup {
    fn name(&self) -> &str {
        &self.name
    }
    fn kind(&self) -> GroupKind {
        GroupKind::RewritingBacked
    }
    fn generators(&self) -> &[Generator] {
        &self.gens
    }
    fn identity(&self) -> Element {
        Element::Word(Vec::new())
    }
    fn mul_gen(&self, g: &Element, s: usize) -> Element {
        let mut w = Self::word(g).to_vec();
        w.push(self.letters[s]);
        Element::Word(self.system.reduce(&w))
    }
    fn mul(&self, g: &Element, h: &Element) -> Element {
        Element::Word(self.system.reduce(&[Self::word(g), Self::word(h)].concat()))
    }
    fn inverse(&self, g: &Element) -> Element {
        Element::Word(self.system.reduce(&self.system.inverse_word(Self::word(g))))
    }
    fn word_of(&self, g: &Element) -> Vec<usize> {
        // Auxiliary letters are rewritten through a metric word found by
        // reducing each letter's expansion; every letter of a complete
        // system for a group has one, found by short search.
        let mut out = Vec::new();
        for &c in Self::word(g) {
            match self.letters.iter().position(|&l| l == c) {
                Some(i) => out.push(i),
                None => out.extend(self.metric_word_for_letter(c)),
            }
        }
        out
    }
    fn format(&self, g: &Element) -> String {
        self.system.format_word(Self::word(g))
    }
    fn parse(&self, s: &str) -> Result<Element> {
        Ok(Element::Word(self.system.reduce(&self.system.parse_word(s)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;

    fn complete(gens: &[&str], rels: &[&str]) -> RewritingSystem {
        let sys = knuth_bendix(&Presentation::new(gens, rels), DEFAULT_MAX_RULES, DEFAULT_MAX_LEN).unwrap();
        assert!(sys.is_complete(), "{:?}", sys.status());
        sys
    }

    #[test]
    fn cyclic_three() {
        let sys = complete(&["s"], &["sss"]);
        assert_eq!(sys.count_normal_forms(100), Some(3));
        assert_eq!(sys.reduce(&sys.parse_word("sss").unwrap()), Vec::<u8>::new());
        assert_eq!(sys.reduce(&[]), Vec::<u8>::new());
        let (ok, bad) = sys.confluence_check(DEFAULT_MAX_LEN);
        assert!(ok && bad.is_empty());
    }

    #[test]
    fn dihedral_six() {
        let sys = complete(&["a", "b"], &["aa", "bb", "(ab)^3"]);
        assert_eq!(sys.count_normal_forms(100), Some(6));
        let abab = sys.reduce(&sys.parse_word("abab").unwrap());
        let ab_inv = sys.reduce(&sys.inverse_word(&sys.parse_word("ab").unwrap()));
        assert_eq!(abab, ab_inv);
    }

    #[test]
    fn quaternion_eight() {
        let sys = complete(&["i", "j"], &["i^4", "i^2J^2", "jij^-1i"]);
        assert_eq!(sys.count_normal_forms(100), Some(8));
    }

    #[test]
    fn missing_inverse_rules_are_not_confluent() {
        let alphabet = paired_generators(&[('s', false)]);
        let sys = RewritingSystem::from_rules(
            alphabet,
            &[(vec![0, 0, 0], vec![])],
            vec![vec![0, 1], vec![1, 0], vec![0, 0, 0]],
        );
        let (ok, bad) = sys.confluence_check(DEFAULT_MAX_LEN);
        assert!(!ok);
        assert!(bad.contains(&(vec![0, 1], vec![])));
    }

    #[test]
    fn triangle_334_needs_an_auxiliary_letter() {
        // over x, X, y, Y alone shortlex completion produces an infinite
        // periodic family of rules
        let plain = knuth_bendix(
            &Presentation::new(&["x", "y"], &["xxx", "yyy", "(xy)^4"]),
            DEFAULT_MAX_RULES,
            DEFAULT_MAX_LEN,
        )
        .unwrap();
        assert!(!plain.is_complete());
        let pres = Presentation::new(&["x", "y", "z"], &["xxx", "yyy", "z^4", "xyZ"]).with_metric_generators(&["x", "y"]);
        let sys = knuth_bendix(&pres, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN).unwrap();
        assert!(sys.is_complete());
        assert!(sys.confluence_check(DEFAULT_MAX_LEN).0);
        assert_eq!(sys.count_normal_forms(100_000), None);
        let g = RewritingGroup::from_presentation("t334", &pres).unwrap();
        assert_eq!(g.generators().len(), 4);
        let b = ball(&g, 10).unwrap();
        assert!(b.sphere_sizes().iter().all(|&n| n > 0));
        for x in b.elements().iter().take(500) {
            assert_eq!(&g.normalize(&g.word_of(x)), x);
        }
    }

    #[test]
    fn parse_commutators_and_powers() {
        let alphabet = paired_generators(&[('x', false), ('y', false)]);
        let w = parse_word(&alphabet, "[x,y]").unwrap();
        assert_eq!(w, parse_word(&alphabet, "xyXY").unwrap());
        assert_eq!(parse_word(&alphabet, "x^-2").unwrap(), parse_word(&alphabet, "XX").unwrap());
        assert_eq!(parse_word(&alphabet, "(xy)^2").unwrap(), parse_word(&alphabet, "xyxy").unwrap());
        assert!(parse_word(&alphabet, "xz").is_err());
    }

    #[test]
    fn reduce_is_idempotent_on_complete_systems() {
        let sys = complete(&["x", "y", "z"], &["xxx", "yyy", "z^4", "xyZ"]);
        let mut rng = 12345u64;
        for _ in 0..200 {
            let len = (rng % 20) as usize;
            let w: Word = (0..len)
                .map(|_| {
                    rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((rng >> 33) % 6) as u8
                })
                .collect();
            let r = sys.reduce(&w);
            assert_eq!(sys.reduce(&r), r);
        }
    }
}
