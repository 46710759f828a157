//! Cayley-ball enumeration, word lengths and dead ends.

use std::collections::HashMap;

use super::{Element, Group};
use crate::error::{Error, Result};

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_BALL_CAP: usize = 10_000_000;

/// Ball of radius `radius` around the identity in the word metric, with
/// elements enumerated in BFS order (generators scanned in declaration
/// order, so the enumeration is deterministic).
#[derive(Debug, Clone)]
pub struct WordMetricBall {
    radius: usize,
    elements: Vec<Element>,
    index: HashMap<Element, (u32, u32)>,
    sphere_starts: Vec<usize>,
}

pub fn ball(group: &dyn Group, radius: usize) -> Result<WordMetricBall> {
    ball_with_cap(group, radius, DEFAULT_BALL_CAP)
}

pub fn ball_with_cap(group: &dyn Group, radius: usize, cap: usize) -> Result<WordMetricBall> {
    let e = group.identity();
    let mut elements = vec![e.clone()];
    let mut index = HashMap::from([(e, (0u32, 0u32))]);
    let mut sphere_starts = vec![0, 1];
    for n in 1..=radius {
        let (lo, hi) = (sphere_starts[n - 1], sphere_starts[n]);
        for i in lo..hi {
            for s in 0..group.generators().len() {
                let h = group.mul_gen(&elements[i], s);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::Resource(format!(
                        "ball of radius {radius} in {} exceeds {cap} elements",
                        group.name()
                    )));
                }
                index.insert(h.clone(), (n as u32, elements.len() as u32));
                elements.push(h);
            }
        }
        sphere_starts.push(elements.len());
    }
    Ok(WordMetricBall { radius, elements, index, sphere_starts })
}

impl WordMetricBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn sphere(&self, n: usize) -> &[Element] {
        &self.elements[self.sphere_starts[n]..self.sphere_starts[n + 1]]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.sphere_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn length(&self, g: &Element) -> Option<usize> {
        self.index.get(g).map(|&(l, _)| l as usize)
    }

    /// Position of `g` in the enumeration.
    pub fn position(&self, g: &Element) -> Option<usize> {
        self.index.get(g).map(|&(_, i)| i as usize)
    }

    pub fn word_length(&self, g: &Element) -> Result<usize> {
        self.length(g).ok_or_else(|| {
            Error::OutOfRange(format!("element lies outside the radius-{} ball", self.radius))
        })
    }
}

/// `true` iff no generator makes `g` longer.
pub fn is_dead_end(group: &dyn Group, ball: &WordMetricBall, g: &Element) -> Result<bool> {
    let len = ball.word_length(g)?;
    if len + 1 > ball.radius() {
        return Err(Error::OutOfRange(format!(
            "dead-end test at length {len} needs a ball of radius {}, have {}",
            len + 1,
            ball.radius()
        )));
    }
    for s in 0..group.generators().len() {
        let h = group.mul_gen(g, s);
        if ball.word_length(&h)? > len {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All dead ends of length at most `radius - 1`, in enumeration order
/// (which sorts them by length).
pub fn find_dead_ends(group: &dyn Group, radius: usize) -> Result<Vec<Element>> {
    if radius == 0 {
        return Err(Error::Contract("find_dead_ends needs radius >= 1".into()));
    }
    let b = ball(group, radius)?;
    let inner = b.sphere_starts[radius];
    let mut out = Vec::new();
    for g in &b.elements[..inner] {
        if is_dead_end(group, &b, g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// The dead-end family `d_n` in ⟨x, y | x³, y³, (xy)^k⟩ as a word over
/// `x, y, X, Y` (uppercase = inverse).
///
/// Even k: `d_{2m} = ((xy)^{k/2}(yx)^{k/2})^m` and
/// `d_{2m+1} = ((xy)^{k/2}(yx)^{k/2})^m (xy)^{k/2}`. Odd k:
/// `d_n = ((xy)^{(k-1)/2} x)^n`. Negative powers use the formal inverse.
pub fn triangle_dead_end_family(k: u32, n: i64) -> Result<String> {
    if k < 3 {
        return Err(Error::Contract(format!("triangle family needs k >= 3, got {k}")));
    }
    if n == 0 {
        return Err(Error::Contract("triangle family index must be nonzero".into()));
    }
    let rep = |s: &str, times: u32| s.repeat(times as usize);
    let pow = |base: &str, e: i64| {
        if e >= 0 {
            rep(base, e as u32)
        } else {
            rep(&formal_inverse(base), (-e) as u32)
        }
    };
    if k.is_multiple_of(2) {
        let half = k / 2;
        let block = format!("{}{}", rep("xy", half), rep("yx", half));
        let m = n.div_euclid(2);
        let mut word = pow(&block, m);
        if n.rem_euclid(2) == 1 {
            word.push_str(&rep("xy", half));
        }
        Ok(word)
    } else {
        let block = format!("{}x", rep("xy", (k - 1) / 2));
        Ok(pow(&block, n))
    }
}

fn formal_inverse(word: &str) -> String {
    word.chars()
        .rev()
        .map(|c| if c.is_ascii_lowercase() { c.to_ascii_uppercase() } else { c.to_ascii_lowercase() })
        .collect()
}
