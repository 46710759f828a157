//! Generators of a right ideal from a unital complement, and the bound
//! dim(I/Iϖ) ≤ dim((F + FS) ∩ I) they give.
//!
//! For a right ideal I of R = 𝔽_pG with a complement F ∋ 1 and the
//! projection x ↦ x̄ onto F along I, I is generated as a right ideal by
//! the elements fs − (fs)‾ with f in a basis of F and s ∈ S.

use serde::Serialize;

use super::algebra::FiniteGroupAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, FpVec};
use crate::subspace::Subspace;

/// Echelon form of I with the identity coordinate moved last, so that
/// the free columns always include the identity when 1 ∉ I.
pub struct Complement {
    ech: Echelon,
    n: usize,
}

impl Complement {
    fn to_perm(&self, v: &FpVec) -> FpVec {
        let fp = self.ech.fp();
        fp.from_sparse(self.n, v.support().into_iter().map(|(i, c)| ((i + self.n - 1) % self.n, c)))
    }

    fn unpermute(&self, v: &FpVec) -> FpVec {
        let fp = self.ech.fp();
        fp.from_sparse(self.n, v.support().into_iter().map(|(i, c)| ((i + 1) % self.n, c)))
    }

    /// Group element indices e_g spanning F.
    pub fn basis(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.ech.free_columns().into_iter().map(|c| (c + 1) % self.n).collect();
        out.sort_unstable();
        out
    }

    /// Projection onto F along I.
    pub fn project(&self, v: &FpVec) -> FpVec {
        self.unpermute(&self.ech.reduce(self.to_perm(v)))
    }
}

fn check_ideal(alg: &FiniteGroupAlgebra, i: &Subspace) -> Result<()> {
    if !alg.is_right_ideal(i) {
        return Err(Error::Contract("subspace is not a right ideal".into()));
    }
    if i.contains(&alg.identity()) {
        return Err(Error::Contract("1 lies in the ideal; no complement contains 1".into()));
    }
    Ok(())
}

pub fn complement(alg: &FiniteGroupAlgebra, i: &Subspace) -> Result<Complement> {
    check_ideal(alg, i)?;
    let n = alg.dim();
    let mut c = Complement { ech: Echelon::new(alg.fp(), n), n };
    for r in i.rows() {
        let v = c.to_perm(r);
        c.ech.insert(v)?;
    }
    debug_assert!(c.basis().contains(&0));
    Ok(c)
}

/// The elements fs − (fs)‾ for f = e_g in the complement basis and s in
/// `s_elems` (group element indices).
pub fn rs_generators(alg: &FiniteGroupAlgebra, i: &Subspace, s_elems: &[usize]) -> Result<Vec<FpVec>> {
    let c = complement(alg, i)?;
    let fp = alg.fp();
    let mut out = Vec::new();
    for g in c.basis() {
        for &s in s_elems {
            let fs = alg.unit(alg.group().mul_idx(g, s));
            let mut x = fs.clone();
            fp.axpy(&mut x, fp.neg(1), &c.project(&fs));
            if !x.is_zero() {
                out.push(x);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct StepBound {
    /// dim(I/Iϖ).
    pub lhs: usize,
    /// dim((F + FS) ∩ I).
    pub rhs: usize,
    pub holds: bool,
}

pub fn rs_step_bound(alg: &FiniteGroupAlgebra, i: &Subspace, s_elems: &[usize]) -> Result<StepBound> {
    let c = complement(alg, i)?;
    let i_varpi = alg.times_augmentation(i)?;
    let lhs = i.rank() - i_varpi.rank();
    let basis = c.basis();
    let mut ffs = alg.span(basis.iter().map(|&g| alg.unit(g)))?;
    for &g in &basis {
        for &s in s_elems {
            ffs.insert(alg.unit(alg.group().mul_idx(g, s)))?;
        }
    }
    let rhs = ffs.intersect(i)?.rank();
    Ok(StepBound { lhs, rhs, holds: lhs <= rhs })
}

/// Generator indices of the group as element indices.
pub fn generator_elements(alg: &FiniteGroupAlgebra) -> Vec<usize> {
    let g = alg.group();
    g.primary_generators().into_iter().map(|s| g.right_gen(0, s)).collect()
}
