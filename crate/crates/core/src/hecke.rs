//! The deformations (𝕜G)_λ of a group ring: basis δ_g with
//! δ_g δ_h = λ^{ℓ(g)+ℓ(h)-ℓ(gh)} δ_{gh}.
//!
//! λ = 1 is the group ring, λ = 0 the crystal algebra (products that drop
//! word length vanish, using 0⁰ = 1), and for invertible λ the map
//! δ_g ↦ λ^{ℓ(g)} g is an isomorphism onto the group ring.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Element, Group, WordMetricBall};
use crate::ring::Ring;

/// Finitely supported combination Σ c_g δ_g with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement<R: Ring> {
    terms: BTreeMap<Element, R::Elem>,
    lambda: R::Elem,
}

impl<R: Ring> HeckeElement<R> {
    pub fn terms(&self) -> &BTreeMap<Element, R::Elem> {
        &self.terms
    }

    pub fn lambda(&self) -> &R::Elem {
        &self.lambda
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &Element) -> Option<&R::Elem> {
        self.terms.get(g)
    }
}

/// Element of the undeformed group ring, the target of [`HeckeAlgebra::untwist`].
pub type GroupRingElement<R> = BTreeMap<Element, <R as Ring>::Elem>;

fn add_term<R: Ring>(ring: &R, terms: &mut BTreeMap<Element, R::Elem>, g: Element, c: R::Elem) {
    if ring.is_zero(&c) {
        return;
    }
    let sum = match terms.get(&g) {
        Some(old) => ring.add(old, &c),
        None => c,
    };
    if ring.is_zero(&sum) {
        terms.remove(&g);
    } else {
        terms.insert(g, sum);
    }
}

/// (𝕜G)_λ restricted to supports inside a word-metric ball.
pub struct HeckeAlgebra<'a, R: Ring> {
    group: &'a dyn Group,
    ball: &'a WordMetricBall,
    ring: R,
    lambda: R::Elem,
}

impl<'a, R: Ring> HeckeAlgebra<'a, R> {
    pub fn new(group: &'a dyn Group, ball: &'a WordMetricBall, ring: R, lambda: R::Elem) -> Self {
        HeckeAlgebra { group, ball, ring, lambda }
    }

    pub fn group(&self) -> &dyn Group {
        self.group
    }

    pub fn ball(&self) -> &WordMetricBall {
        self.ball
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn lambda(&self) -> &R::Elem {
        &self.lambda
    }

    pub fn zero(&self) -> HeckeElement<R> {
        HeckeElement { terms: BTreeMap::new(), lambda: self.lambda.clone() }
    }

    pub fn delta(&self, g: &Element) -> Result<HeckeElement<R>> {
        self.ball.word_length(g)?;
        Ok(self.term(g.clone(), self.ring.one()))
    }

    pub fn term(&self, g: Element, c: R::Elem) -> HeckeElement<R> {
        let mut e = self.zero();
        add_term(&self.ring, &mut e.terms, g, c);
        e
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Element, R::Elem)>) -> Result<HeckeElement<R>> {
        let mut e = self.zero();
        for (g, c) in terms {
            self.ball.word_length(&g)?;
            add_term(&self.ring, &mut e.terms, g, c);
        }
        Ok(e)
    }

    /// Coefficient and product element of δ_g δ_h; the coefficient is
    /// zero when λ = 0 and the length drops.
    pub fn delta_product(&self, g: &Element, h: &Element) -> Result<(Element, R::Elem)> {
        let lg = self.ball.word_length(g)?;
        let lh = self.ball.word_length(h)?;
        let gh = self.group.mul(g, h);
        let lgh = self.ball.word_length(&gh)?;
        debug_assert!(lgh <= lg + lh);
        Ok((gh, self.ring.pow(&self.lambda, (lg + lh - lgh) as u64)))
    }

    pub fn delta_mul(&self, g: &Element, h: &Element) -> Result<HeckeElement<R>> {
        let (gh, c) = self.delta_product(g, h)?;
        Ok(self.term(gh, c))
    }

    fn check(&self, a: &HeckeElement<R>) -> Result<()> {
        if a.lambda != self.lambda {
            return Err(Error::Contract(format!(
                "element built for lambda = {} used with lambda = {}",
                self.ring.format(&a.lambda),
                self.ring.format(&self.lambda)
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &HeckeElement<R>, b: &HeckeElement<R>) -> Result<HeckeElement<R>> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        for (g, c) in &b.terms {
            add_term(&self.ring, &mut out.terms, g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, a: &HeckeElement<R>, c: &R::Elem) -> HeckeElement<R> {
        let mut out = self.zero();
        for (g, x) in &a.terms {
            add_term(&self.ring, &mut out.terms, g.clone(), self.ring.mul(x, c));
        }
        out
    }

    /// Bilinear extension of [`Self::delta_mul`].
    pub fn mul(&self, a: &HeckeElement<R>, b: &HeckeElement<R>) -> Result<HeckeElement<R>> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (g, x) in &a.terms {
            for (h, y) in &b.terms {
                let (gh, c) = self.delta_product(g, h)?;
                let c = self.ring.mul(&c, &self.ring.mul(x, y));
                add_term(&self.ring, &mut out.terms, gh, c);
            }
        }
        Ok(out)
    }

    /// δ_g ↦ λ^{ℓ(g)} g.
    pub fn untwist(&self, a: &HeckeElement<R>) -> Result<GroupRingElement<R>> {
        self.check(a)?;
        if self.ring.inv(&self.lambda).is_none() {
            return Err(Error::Contract(format!(
                "untwisting needs an invertible lambda, got {} in {}",
                self.ring.format(&self.lambda),
                self.ring.name()
            )));
        }
        let mut out = BTreeMap::new();
        for (g, c) in &a.terms {
            let l = self.ball.word_length(g)?;
            add_term(&self.ring, &mut out, g.clone(), self.ring.mul(c, &self.ring.pow(&self.lambda, l as u64)));
        }
        Ok(out)
    }

    /// Parse `"coeff*g + coeff*h - g"`; group elements are whatever the
    /// group's parser accepts (tuples, words, labels).
    pub fn parse_element(&self, s: &str) -> Result<HeckeElement<R>> {
        self.from_terms(parse_terms(self.group, &self.ring, s)?)
    }

    pub fn format_element(&self, a: &HeckeElement<R>) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(g, c)| format!("{}*{}", self.ring.format(c), self.group.format(g)))
            .collect();
        parts.join(" + ")
    }
}

/// Parse `"coeff*g + coeff*h - g"` into (element, coefficient) terms, summing
/// repeats and dropping zeros. Terms come out sorted by element.
pub fn parse_group_ring_element<R: Ring>(group: &dyn Group, ring: &R, s: &str) -> Result<GroupRingElement<R>> {
    let mut out: GroupRingElement<R> = BTreeMap::new();
    for (g, c) in parse_terms(group, ring, s)? {
        let sum = ring.add(out.get(&g).unwrap_or(&ring.zero()), &c);
        out.insert(g, sum);
    }
    out.retain(|_, c| !ring.is_zero(c));
    Ok(out)
}

fn parse_terms<R: Ring>(group: &dyn Group, ring: &R, s: &str) -> Result<Vec<(Element, R::Elem)>> {
    let mut terms = Vec::new();
    for (sign, chunk) in split_signed(s)? {
        let (c, g) = match chunk.split_once('*') {
            Some((c, g)) => (ring.parse(c)?, g),
            None => (ring.one(), chunk.as_str()),
        };
        let c = if sign { ring.neg(&c) } else { c };
        terms.push((group.parse(g)?, c));
    }
    Ok(terms)
}

/// Multiplication in the group ring itself; no ball is involved.
pub fn group_ring_mul<R: Ring>(
    group: &dyn Group,
    ring: &R,
    a: &GroupRingElement<R>,
    b: &GroupRingElement<R>,
) -> GroupRingElement<R> {
    let mut out = BTreeMap::new();
    for (g, x) in a {
        for (h, y) in b {
            add_term(ring, &mut out, group.mul(g, h), ring.mul(x, y));
        }
    }
    out
}

/// Split on top-level `+`/`-`, keeping parentheses and brackets intact.
/// Returns (negated, term) pairs.
fn split_signed(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        let at_top = depth == 0 && (c == '+' || c == '-');
        // a sign after `*`, `^` or at the start of a term belongs to it
        let trimmed = cur.trim();
        if at_top && !trimmed.is_empty() && !trimmed.ends_with(['*', '^']) {
            out.push((neg, trimmed.to_string()));
            cur.clear();
            neg = c == '-';
        } else if at_top && trimmed.is_empty() {
            if c == '-' {
                neg = !neg;
            }
        } else {
            cur.push(c);
        }
    }
    let trimmed = cur.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    out.push((neg, trimmed.to_string()));
    Ok(out)
}

/// Is every sampled product δ_g δ_h (g, h in the radius-`r` sub-ball)
/// either zero or a single basis element with coefficient 1? `sample`
/// of `None` checks all pairs. Needs λ = 0 and a ball of radius ≥ 2r.
pub fn crystal_monomial_check<R: Ring>(
    alg: &HeckeAlgebra<'_, R>,
    radius: usize,
    sample: Option<usize>,
    seed: u64,
) -> Result<bool> {
    if !alg.ring.is_zero(&alg.lambda) {
        return Err(Error::Contract("crystal check needs lambda = 0".into()));
    }
    if alg.ball.radius() < 2 * radius {
        return Err(Error::OutOfRange(format!(
            "products of radius-{radius} elements need a radius-{} ball, have {}",
            2 * radius,
            alg.ball.radius()
        )));
    }
    let inner: Vec<&Element> = alg.ball.elements().iter().filter(|g| alg.ball.length(g).unwrap() <= radius).collect();
    let mut pairs: Vec<(usize, usize)> =
        (0..inner.len()).flat_map(|i| (0..inner.len()).map(move |j| (i, j))).collect();
    if let Some(n) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(n);
    }
    for (i, j) in pairs {
        let p = alg.delta_mul(inner[i], inner[j])?;
        match p.terms.len() {
            0 => {}
            1 => {
                let (gh, c) = p.terms.iter().next().unwrap();
                let graded = alg.ball.length(gh) == Some(alg.ball.length(inner[i]).unwrap() + alg.ball.length(inner[j]).unwrap());
                if *c != alg.ring.one() || !graded {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}
