//! Finite group algebras over GF(p) and powers of the augmentation ideal.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Group};
use crate::linalg::{Echelon, Fp, FpVec};
use crate::subspace::{Ambient, MonomialAlgebra, Subspace};

/// Default cap on the group order for explicit algebras.
pub const DEFAULT_ALGEBRA_CAP: usize = 2048;

/// 𝔽_pG with basis the group elements in the group's own enumeration
/// (index 0 is the identity).
#[derive(Debug, Clone)]
pub struct FiniteGroupAlgebra {
    group: Arc<FiniteGroup>,
    fp: Fp,
    ambient: Arc<Ambient>,
}

pub fn build_group_algebra(group: Arc<FiniteGroup>, p: u32) -> Result<FiniteGroupAlgebra> {
    build_group_algebra_with_cap(group, p, DEFAULT_ALGEBRA_CAP)
}

pub fn build_group_algebra_with_cap(group: Arc<FiniteGroup>, p: u32, cap: usize) -> Result<FiniteGroupAlgebra> {
    if group.len() > cap {
        return Err(Error::Resource(format!(
            "group {} has order {} above the algebra cap {cap}",
            group.name(),
            group.len()
        )));
    }
    let fp = Fp::new(p)?;
    let ambient = Ambient::new((0..group.len() as u32).map(Element::Index).collect())?;
    Ok(FiniteGroupAlgebra { group, fp, ambient })
}

impl MonomialAlgebra for FiniteGroupAlgebra {
    fn fp(&self) -> Fp {
        self.fp
    }
    fn product(&self, g: &Element, h: &Element) -> Result<(Element, u32)> {
        Ok((self.group.mul(g, h), 1))
    }
}

impl FiniteGroupAlgebra {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn dim(&self) -> usize {
        self.group.len()
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn unit(&self, g: usize) -> FpVec {
        self.fp.unit(self.dim(), g)
    }

    pub fn identity(&self) -> FpVec {
        self.unit(0)
    }

    /// `v·h` for a group element index `h`.
    pub fn right_mul_element(&self, v: &FpVec, h: usize) -> FpVec {
        let mut out = self.fp.zeros(self.dim());
        for (g, c) in v.support() {
            out.set(self.group.mul_idx(g, h), c);
        }
        out
    }

    /// `v·s` for a generator index `s`; uses only the generator table.
    pub fn right_mul_generator(&self, v: &FpVec, s: usize) -> FpVec {
        let mut out = self.fp.zeros(self.dim());
        for (g, c) in v.support() {
            out.set(self.group.right_gen(g, s), c);
        }
        out
    }

    pub fn mul(&self, a: &FpVec, b: &FpVec) -> FpVec {
        let mut out = self.fp.zeros(self.dim());
        for (h, y) in b.support() {
            let part = self.right_mul_element(a, h);
            self.fp.axpy(&mut out, y, &part);
        }
        out
    }

    /// `v·(s − 1)` for a generator index `s`.
    pub fn times_generator_minus_one(&self, v: &FpVec, s: usize) -> FpVec {
        let mut out = self.right_mul_generator(v, s);
        self.fp.axpy(&mut out, self.fp.neg(1), v);
        out
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = FpVec>) -> Result<Subspace> {
        Subspace::span(&self.ambient, self.fp, vectors)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(&self.ambient, self.fp)
    }

    /// The augmentation ideal, spanned by g − 1.
    pub fn augmentation_ideal(&self) -> Subspace {
        let vs = (1..self.dim()).map(|g| {
            let mut v = self.unit(g);
            v.set(0, self.fp.neg(1));
            v
        });
        self.span(vs).unwrap()
    }

    /// Smallest right ideal containing the given vectors.
    pub fn right_ideal(&self, gens: &[FpVec]) -> Result<Subspace> {
        let mut ideal = self.span(std::iter::empty())?;
        let mut queue: VecDeque<FpVec> = VecDeque::new();
        for g in gens {
            if ideal.insert(g.clone())? {
                queue.push_back(g.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in self.group.primary_generators() {
                let w = self.right_mul_generator(&v, s);
                if ideal.insert(w.clone())? {
                    queue.push_back(w);
                }
            }
        }
        Ok(ideal)
    }

    pub fn is_right_ideal(&self, i: &Subspace) -> bool {
        i.rows()
            .iter()
            .all(|r| self.group.primary_generators().into_iter().all(|s| i.contains(&self.right_mul_generator(r, s))))
    }

    /// span{b(s − 1) : b a basis row of `i`, s a generator}; for a
    /// two-sided ideal `i` this is i·ϖ.
    pub fn times_augmentation(&self, i: &Subspace) -> Result<Subspace> {
        let gens = self.group.primary_generators();
        let mut out = self.span(std::iter::empty())?;
        for r in i.rows() {
            for &s in &gens {
                out.insert(self.times_generator_minus_one(r, s))?;
            }
        }
        Ok(out)
    }
}

/// ϖ⁰ ⊇ ϖ¹ ⊇ … up to the first repeat.
#[derive(Debug, Clone)]
pub struct AugmentationLadder {
    pub powers: Vec<Subspace>,
    /// r_n = dim ϖⁿ − dim ϖⁿ⁺¹.
    pub graded_dims: Vec<usize>,
    /// Dimension where the ladder stops descending (0 for p-groups).
    pub stable_dim: usize,
}

impl AugmentationLadder {
    pub fn power_dims(&self) -> Vec<usize> {
        self.powers.iter().map(|s| s.rank()).collect()
    }
}

/// ϖⁿ⁺¹ = span{b(s − 1)}: since ϖ is generated as a left ideal by the
/// elements s − 1, ϖⁿ·ϖ = Σ_s ϖⁿ(s − 1).
pub fn aug_ladder(alg: &FiniteGroupAlgebra) -> Result<AugmentationLadder> {
    let mut powers = vec![alg.whole(), alg.augmentation_ideal()];
    loop {
        let last = powers.last().unwrap();
        let next = alg.times_augmentation(last)?;
        if next.rank() == last.rank() {
            break;
        }
        powers.push(next);
    }
    let dims: Vec<usize> = powers.iter().map(|s| s.rank()).collect();
    let graded_dims = dims.windows(2).map(|w| w[0] - w[1]).collect();
    let stable_dim = *dims.last().unwrap();
    Ok(AugmentationLadder { powers, graded_dims, stable_dim })
}

/// Graded dimensions r_0..=r_{n_max} computed on the dual side, for
/// groups too large for [`aug_ladder`].
///
/// W_n, the functions G → 𝔽_p vanishing on ϖⁿ, satisfy W_0 = 0 and
/// W_{n+1} = {f : f(·s) − f ∈ W_n for every generator s}, so
/// dim W_n = r_0 + … + r_{n−1}. An f ∈ W_{n+1} is fixed by f(1) and the
/// coefficients of each difference f(·s) − f on a basis of W_n; it is
/// propagated along a spanning tree and the remaining Cayley-graph edges
/// give the linear conditions.
pub fn graded_dims_dual(group: &FiniteGroup, p: u32, n_max: usize) -> Result<Vec<usize>> {
    let fp = Fp::new(p)?;
    let n = group.len();
    let gens = group.primary_generators();
    // spanning tree over the primary generators only
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let g = order[head];
        head += 1;
        for (k, &s) in gens.iter().enumerate() {
            let h = group.right_gen(g, s);
            if !seen[h] {
                seen[h] = true;
                parent[h] = Some((g, k));
                order.push(h);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Contract("primary generators do not reach every element".into()));
    }

    let mut basis: Vec<FpVec> = Vec::new(); // W_n as functions on G
    let mut dims = Vec::new();
    for _ in 0..=n_max {
        let m = basis.len();
        let unknowns = 1 + gens.len() * m;
        // linear form of f(g) in the unknowns (f(1), c_{s,j})
        let mut forms: Vec<Option<FpVec>> = vec![None; n];
        forms[0] = Some(fp.unit(unknowns, 0));
        let step = |form: &FpVec, g: usize, k: usize| {
            let mut out = form.clone();
            for (j, w) in basis.iter().enumerate() {
                let x = w.get(g);
                if x != 0 {
                    let col = 1 + k * m + j;
                    out.set(col, fp.add(out.get(col), x));
                }
            }
            out
        };
        for &g in &order[1..] {
            let (q, k) = parent[g].unwrap();
            let f = step(forms[q].as_ref().unwrap(), q, k);
            forms[g] = Some(f);
        }
        let forms: Vec<FpVec> = forms.into_iter().map(Option::unwrap).collect();
        let mut eqs = Echelon::new(fp, unknowns);
        'edges: for g in 0..n {
            for (k, &s) in gens.iter().enumerate() {
                let h = group.right_gen(g, s);
                if parent[h] == Some((g, k)) {
                    continue;
                }
                let mut e = step(&forms[g], g, k);
                fp.axpy(&mut e, fp.neg(1), &forms[h]);
                eqs.insert(e)?;
                if eqs.rank() == unknowns {
                    break 'edges;
                }
            }
        }
        let solutions = eqs.nullspace();
        let next: Vec<FpVec> = solutions
            .iter()
            .map(|u| {
                let mut f = fp.zeros(n);
                for (g, form) in forms.iter().enumerate() {
                    f.set(g, fp.dot(form, u));
                }
                f
            })
            .collect();
        dims.push(next.len() - m);
        if next.len() == m {
            // W stopped growing: every later r_n vanishes
            dims.resize(n_max + 1, 0);
            break;
        }
        basis = next;
    }
    Ok(dims)
}

/// First index where two graded-dimension sequences disagree; entries
/// before it are trusted as dimensions of the infinite group.
pub fn agreement_horizon(lower: &[usize], upper: &[usize]) -> usize {
    lower.iter().zip(upper).take_while(|(a, b)| a == b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::registry::finite_builtin;

    fn alg(name: &str, p: u32) -> FiniteGroupAlgebra {
        build_group_algebra(Arc::new(finite_builtin(name, 4096).unwrap()), p).unwrap()
    }

    #[test]
    fn small_ladders() {
        assert_eq!(aug_ladder(&alg("c2", 2)).unwrap().graded_dims, vec![1, 1]);
        let c4 = aug_ladder(&alg("c4", 2)).unwrap();
        assert_eq!(c4.graded_dims, vec![1, 1, 1, 1]);
        assert_eq!(c4.power_dims(), vec![4, 3, 2, 1, 0]);
        assert_eq!(aug_ladder(&alg("c2xc2", 2)).unwrap().graded_dims, vec![1, 2, 1]);
        assert_eq!(alg("q8", 2).dim(), 8);
    }

    #[test]
    fn non_p_groups_stabilize_above_zero() {
        // over GF(2) the ideal generated by (1+s+s²) in C3 survives
        let l = aug_ladder(&alg("c3", 2)).unwrap();
        assert_eq!(l.graded_dims, vec![1]);
        assert_eq!(l.stable_dim, 2);
    }

    #[test]
    fn dual_matches_primal() {
        for (name, p) in [("c4", 2), ("c2xc2", 2), ("d4", 2), ("q8", 2), ("c9", 3), ("heis-mod3", 3), ("d3", 2), ("c3", 2)] {
            let a = alg(name, p);
            let primal = aug_ladder(&a).unwrap().graded_dims;
            let dual = graded_dims_dual(a.group(), p, primal.len() + 2).unwrap();
            assert_eq!(&dual[..primal.len()], &primal[..], "{name}");
            assert!(dual[primal.len()..].iter().all(|&x| x == 0), "{name}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Arc::new(finite_builtin("c8", 100).unwrap());
        assert!(matches!(build_group_algebra_with_cap(g, 2, 4), Err(Error::Resource(_))));
    }

    #[test]
    fn powers_multiply_into_each_other() {
        let a = alg("d4", 2);
        let l = aug_ladder(&a).unwrap();
        for i in 1..l.powers.len() {
            for j in 1..l.powers.len() - i {
                let target = &l.powers[(i + j).min(l.powers.len() - 1)];
                for x in l.powers[i].rows() {
                    for y in l.powers[j].rows() {
                        assert!(target.contains(&a.mul(x, y)));
                    }
                }
            }
        }
    }
}
