//! Truncated Magnus expansion x_i ↦ 1 + x_i into noncommutative power
//! series over 𝔽_p, and the degree it induces on free-group words.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::paired_generators;
use crate::linalg::{Echelon, Fp, FpVec};
use crate::rewriting::parse_word;

/// Default truncation degree.
pub const DEFAULT_MAGNUS_DEGREE: usize = 12;
/// Monomial budget k^D per degree.
pub const MAGNUS_MONOMIAL_CAP: usize = 1 << 22;

/// Degree of a word: exact, or only known to exceed the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Finite(usize),
    Above(usize),
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::Above(d) => write!(f, ">{d}"),
        }
    }
}

/// A free-group letter: generator index and whether it is inverted.
pub type Letter = (usize, bool);

/// Parse a word over the given lowercase generator symbols; uppercase
/// letters are inverses, and `[u,v]`, `x^-2`, `(xy)^3` are accepted.
pub fn parse_free_word(s: &str, symbols: &str) -> Result<Vec<Letter>> {
    let spec: Vec<(char, bool)> = symbols.chars().map(|c| (c, false)).collect();
    let alphabet = paired_generators(&spec);
    Ok(parse_word(&alphabet, s)?.into_iter().map(|l| (l as usize / 2, l % 2 == 1)).collect())
}

/// Power series Σ_{d ≤ D} with the degree-d part indexed by words of
/// length d in base k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    k: usize,
    fp: Fp,
    parts: Vec<Vec<u32>>,
}

impl Series {
    pub fn one(k: usize, fp: Fp, max_deg: usize) -> Result<Self> {
        let top = k.checked_pow(max_deg as u32).unwrap_or(usize::MAX);
        if k == 0 || top > MAGNUS_MONOMIAL_CAP {
            return Err(Error::Resource(format!("{k}^{max_deg} monomials exceed the Magnus budget")));
        }
        let mut parts: Vec<Vec<u32>> = (0..=max_deg).map(|d| vec![0; k.pow(d as u32)]).collect();
        parts[0][0] = 1;
        Ok(Series { k, fp, parts })
    }

    pub fn max_deg(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn part(&self, d: usize) -> &[u32] {
        &self.parts[d]
    }

    /// Multiply on the right by Σ_j a_j x_i^j.
    fn mul_letter_series(&self, i: usize, a: &[u32]) -> Series {
        let k = self.k;
        let mut out = Series { k, fp: self.fp, parts: self.parts.iter().map(|p| vec![0; p.len()]).collect() };
        for d in 0..=self.max_deg() {
            // suffix x_i^j has index i·(k^{j−1} + … + 1)
            let mut suffix = 0usize;
            let mut kj = 1usize;
            for j in 0..=d {
                if j > 0 {
                    suffix = suffix * k + i;
                    kj *= k;
                }
                let c = a.get(j).copied().unwrap_or(0);
                if c != 0 {
                    for (m, &x) in self.parts[d - j].iter().enumerate() {
                        if x != 0 {
                            let t = &mut out.parts[d][m * kj + suffix];
                            *t = self.fp.add(*t, self.fp.mul(c, x));
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiply on the right by the image of a letter, 1 + x or
    /// (1 + x)⁻¹ = Σ (−x)^j.
    pub fn mul_letter(&self, (i, inverse): Letter) -> Series {
        let a = self.letter_coeffs(inverse, false);
        self.mul_letter_series(i, &a)
    }

    /// Multiply on the right by (letter image − 1).
    pub fn mul_letter_minus_one(&self, (i, inverse): Letter) -> Series {
        let a = self.letter_coeffs(inverse, true);
        self.mul_letter_series(i, &a)
    }

    fn letter_coeffs(&self, inverse: bool, minus_one: bool) -> Vec<u32> {
        let mut a: Vec<u32> = if inverse {
            (0..=self.max_deg()).map(|j| if j % 2 == 0 { 1 } else { self.fp.neg(1) }).collect()
        } else {
            vec![1, 1]
        };
        if minus_one {
            a[0] = 0;
        }
        a
    }

    /// Lowest degree ≥ 1 with a nonzero coefficient.
    pub fn valuation_above_constant(&self) -> Option<usize> {
        (1..=self.max_deg()).find(|&d| self.parts[d].iter().any(|&x| x != 0))
    }
}

/// Image of a word in the truncated Magnus algebra.
pub fn magnus_image(word: &[Letter], k: usize, p: u32, max_deg: usize) -> Result<Series> {
    let fp = Fp::new(p)?;
    if let Some(&(i, _)) = word.iter().find(|(i, _)| *i >= k) {
        return Err(Error::Contract(format!("letter index {i} beyond {k} generators")));
    }
    let mut s = Series::one(k, fp, max_deg)?;
    for &l in word {
        s = s.mul_letter(l);
    }
    Ok(s)
}

/// deg_p of a word: least d ≥ 1 where (image − 1) is nonzero.
pub fn magnus_deg(word: &[Letter], k: usize, p: u32, max_deg: usize) -> Result<Degree> {
    let s = magnus_image(word, k, p, max_deg)?;
    Ok(match s.valuation_above_constant() {
        Some(d) => Degree::Finite(d),
        None => Degree::Above(max_deg),
    })
}

/// Dimensions of the degree-n components (n = 0..=n_max) of the images
/// of the spanning products (s_1 − 1)…(s_n − 1), s_i ranging over all
/// letters and their inverses, in the Magnus algebra truncated at
/// `max_deg ≥ n_max`.
pub fn free_graded_dims(k: usize, n_max: usize, p: u32, max_deg: usize) -> Result<Vec<usize>> {
    if max_deg < n_max {
        return Err(Error::Contract(format!("truncation {max_deg} below requested degree {n_max}")));
    }
    let fp = Fp::new(p)?;
    let letters: Vec<Letter> = (0..k).flat_map(|i| [(i, false), (i, true)]).collect();
    let mut spans: Vec<Echelon> = (0..=n_max).map(|n| Echelon::new(fp, k.pow(n as u32))).collect();
    let root = Series::one(k, fp, max_deg)?;
    let mut stack = vec![(root, 0usize)];
    while let Some((s, n)) = stack.pop() {
        let v: FpVec = fp.from_entries(s.part(n));
        spans[n].insert(v)?;
        if n < n_max {
            for &l in &letters {
                stack.push((s.mul_letter_minus_one(l), n + 1));
            }
        }
    }
    Ok(spans.iter().map(|e| e.rank()).collect())
}
