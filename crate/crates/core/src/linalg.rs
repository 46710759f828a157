//! Vectors and incremental reduced row echelon forms over GF(p).
//!
//! For p = 2 vectors are bit-packed; otherwise they hold residues.

use crate::error::{Error, Result};
use crate::ring::is_prime;

/// Arithmetic modulo a prime below 2¹⁶.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 16 || !is_prime(p as u64) {
            return Err(Error::Contract(format!("{p} is not a prime below 2^16")));
        }
        Ok(Fp { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn from_i64(self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        let (mut acc, mut base, mut e) = (1u32, a, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn zeros(self, n: usize) -> FpVec {
        if self.p == 2 {
            FpVec::Bits { words: vec![0; n.div_ceil(64)], len: n }
        } else {
            FpVec::Dense(vec![0; n])
        }
    }

    pub fn unit(self, n: usize, i: usize) -> FpVec {
        let mut v = self.zeros(n);
        v.set(i, 1);
        v
    }

    pub fn from_entries(self, entries: &[u32]) -> FpVec {
        let mut v = self.zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            v.set(i, x % self.p);
        }
        v
    }

    pub fn from_sparse(self, n: usize, terms: impl IntoIterator<Item = (usize, u32)>) -> FpVec {
        let mut v = self.zeros(n);
        for (i, c) in terms {
            let old = v.get(i);
            v.set(i, self.add(old, c % self.p));
        }
        v
    }

    /// `y += c·x`.
    pub fn axpy(self, y: &mut FpVec, c: u32, x: &FpVec) {
        if c == 0 {
            return;
        }
        match (y, x) {
            (FpVec::Bits { words: a, .. }, FpVec::Bits { words: b, .. }) => {
                for (u, v) in a.iter_mut().zip(b) {
                    *u ^= v;
                }
            }
            (FpVec::Dense(a), FpVec::Dense(b)) => {
                for (u, &v) in a.iter_mut().zip(b) {
                    if v != 0 {
                        *u = (*u + c * v) % self.p;
                    }
                }
            }
            _ => panic!("mixed vector representations"),
        }
    }

    pub fn scale(self, y: &mut FpVec, c: u32) {
        match y {
            FpVec::Bits { words, .. } => {
                if c.is_multiple_of(2) {
                    words.iter_mut().for_each(|w| *w = 0);
                }
            }
            FpVec::Dense(a) => a.iter_mut().for_each(|u| *u = *u * c % self.p),
        }
    }

    pub fn dot(self, x: &FpVec, y: &FpVec) -> u32 {
        match (x, y) {
            (FpVec::Bits { words: a, .. }, FpVec::Bits { words: b, .. }) => {
                a.iter().zip(b).map(|(u, v)| (u & v).count_ones()).sum::<u32>() % 2
            }
            (FpVec::Dense(a), FpVec::Dense(b)) => {
                a.iter().zip(b).fold(0u64, |acc, (&u, &v)| (acc + u as u64 * v as u64) % self.p as u64) as u32
            }
            _ => panic!("mixed vector representations"),
        }
    }
}

/// A vector over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FpVec {
    Bits { words: Vec<u64>, len: usize },
    Dense(Vec<u32>),
}

impl FpVec {
    pub fn len(&self) -> usize {
        match self {
            FpVec::Bits { len, .. } => *len,
            FpVec::Dense(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> u32 {
        match self {
            FpVec::Bits { words, .. } => ((words[i / 64] >> (i % 64)) & 1) as u32,
            FpVec::Dense(v) => v[i],
        }
    }

    pub fn set(&mut self, i: usize, x: u32) {
        match self {
            FpVec::Bits { words, .. } => {
                if x & 1 == 1 {
                    words[i / 64] |= 1 << (i % 64);
                } else {
                    words[i / 64] &= !(1 << (i % 64));
                }
            }
            FpVec::Dense(v) => v[i] = x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FpVec::Bits { words, .. } => words.iter().all(|&w| w == 0),
            FpVec::Dense(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// First nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        match self {
            FpVec::Bits { words, .. } => words
                .iter()
                .position(|&w| w != 0)
                .map(|k| k * 64 + words[k].trailing_zeros() as usize),
            FpVec::Dense(v) => v.iter().position(|&x| x != 0),
        }
    }

    /// Nonzero entries as (index, value).
    pub fn support(&self) -> Vec<(usize, u32)> {
        match self {
            FpVec::Bits { words, len } => {
                let mut out = Vec::new();
                for (k, &w) in words.iter().enumerate() {
                    let mut w = w;
                    while w != 0 {
                        let b = w.trailing_zeros() as usize;
                        if k * 64 + b < *len {
                            out.push((k * 64 + b, 1));
                        }
                        w &= w - 1;
                    }
                }
                out
            }
            FpVec::Dense(v) => v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect(),
        }
    }

    pub fn entries(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

/// Reduced row echelon form, kept canonical under insertion: rows are
/// sorted by pivot, pivots are 1 and pivot columns are zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    fp: Fp,
    ncols: usize,
    rows: Vec<FpVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(fp: Fp, ncols: usize) -> Self {
        Echelon { fp, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(fp: Fp, ncols: usize, rows: impl IntoIterator<Item = FpVec>) -> Result<Self> {
        let mut e = Echelon::new(fp, ncols);
        for r in rows {
            e.insert(r)?;
        }
        Ok(e)
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[FpVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &FpVec) -> Result<()> {
        if v.len() != self.ncols {
            return Err(Error::Contract(format!("vector of length {} in a space of dimension {}", v.len(), self.ncols)));
        }
        Ok(())
    }

    /// Residue of `v` after clearing all pivot columns.
    pub fn reduce(&self, mut v: FpVec) -> FpVec {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v.get(c);
            if x != 0 {
                self.fp.axpy(&mut v, self.fp.neg(x), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Insert a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: FpVec) -> Result<bool> {
        self.check_len(&v)?;
        let mut v = self.reduce(v);
        let Some(c) = v.leading() else { return Ok(false) };
        let inv = self.fp.inv(v.get(c));
        self.fp.scale(&mut v, inv);
        for row in self.rows.iter_mut() {
            let x = row.get(c);
            if x != 0 {
                self.fp.axpy(row, self.fp.neg(x), &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        Ok(true)
    }

    /// Basis of {x : r·x = 0 for every row r}.
    pub fn nullspace(&self) -> Vec<FpVec> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&f| !is_pivot[f]) {
            let mut x = self.fp.unit(self.ncols, f);
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                let a = row.get(f);
                if a != 0 {
                    x.set(c, self.fp.neg(a));
                }
            }
            out.push(x);
        }
        out
    }

    /// Non-pivot columns (the coordinate complement).
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_gf2_and_gf3() {
        let f2 = Fp::new(2).unwrap();
        let e = Echelon::from_rows(f2, 3, [f2.from_entries(&[1, 1, 0]), f2.from_entries(&[0, 1, 1]), f2.from_entries(&[1, 0, 1])]).unwrap();
        assert_eq!(e.rank(), 2);
        let f3 = Fp::new(3).unwrap();
        let e = Echelon::from_rows(f3, 3, [f3.from_entries(&[1, 1, 0]), f3.from_entries(&[0, 1, 1]), f3.from_entries(&[1, 0, 1])]).unwrap();
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn canonical_rows() {
        let f5 = Fp::new(5).unwrap();
        let a = Echelon::from_rows(f5, 3, [f5.from_entries(&[1, 2, 3]), f5.from_entries(&[0, 1, 4])]).unwrap();
        let b = Echelon::from_rows(f5, 3, [f5.from_entries(&[0, 3, 2]), f5.from_entries(&[2, 4, 1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        for p in [2, 3, 7] {
            let f = Fp::new(p).unwrap();
            let e = Echelon::from_rows(f, 5, [f.from_entries(&[1, 2, 0, 1, 1]), f.from_entries(&[0, 1, 1, 0, 3])]).unwrap();
            let ns = e.nullspace();
            assert_eq!(ns.len() + e.rank(), 5);
            for x in &ns {
                for r in e.rows() {
                    assert_eq!(f.dot(x, r), 0);
                }
            }
        }
    }

    #[test]
    fn bit_vectors_cross_word_boundaries() {
        let f2 = Fp::new(2).unwrap();
        let mut v = f2.zeros(130);
        v.set(129, 1);
        v.set(64, 1);
        assert_eq!(v.leading(), Some(64));
        assert_eq!(v.support(), vec![(64, 1), (129, 1)]);
        assert!(Echelon::new(f2, 131).insert(v).is_err());
    }
}
