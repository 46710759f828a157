//! Finite-dimensional subspaces of group algebras over GF(p), with the
//! rank defect (rank(F+FS) − rank F)/rank F and its set-theoretic
//! counterpart (#(F∪FS) − #F)/#F.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::group::{Element, Group, WordMetricBall};
use crate::hecke::HeckeAlgebra;
use crate::linalg::{Echelon, Fp, FpVec};
use crate::ring::PrimeField;

/// A fixed listing of basis elements; column `i` of every vector is the
/// coefficient of `elements[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl Ambient {
    pub fn new(elements: Vec<Element>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, g) in elements.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::Contract(format!("element {g:?} listed twice")));
            }
        }
        Ok(Arc::new(Ambient { elements, index }))
    }

    pub fn from_ball(ball: &WordMetricBall) -> Arc<Self> {
        Self::new(ball.elements().to_vec()).expect("ball elements are distinct")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn position(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn require(&self, g: &Element) -> Result<usize> {
        self.position(g)
            .ok_or_else(|| Error::OutOfRange(format!("{g:?} lies outside the ambient enumeration; enlarge it")))
    }
}

/// Sparse algebra element Σ c·g with coefficients in GF(p).
pub type AlgebraElement = Vec<(Element, u32)>;

/// An algebra whose basis products are scalar multiples of basis
/// elements, such as (𝕜G)_λ or a finite group algebra.
pub trait MonomialAlgebra {
    fn fp(&self) -> Fp;
    /// `g·h = c·k`, returned as `(k, c)`.
    fn product(&self, g: &Element, h: &Element) -> Result<(Element, u32)>;
}

impl MonomialAlgebra for HeckeAlgebra<'_, PrimeField> {
    fn fp(&self) -> Fp {
        Fp::new(self.ring().p()).expect("field characteristic is prime")
    }
    fn product(&self, g: &Element, h: &Element) -> Result<(Element, u32)> {
        self.delta_product(g, h)
    }
}

/// Subspace in canonical reduced echelon form.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: Arc<Ambient>,
    ech: Echelon,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.ech == other.ech
    }
}

impl Subspace {
    pub fn zero(ambient: &Arc<Ambient>, fp: Fp) -> Self {
        Subspace { ambient: ambient.clone(), ech: Echelon::new(fp, ambient.len()) }
    }

    pub fn whole(ambient: &Arc<Ambient>, fp: Fp) -> Self {
        let n = ambient.len();
        Self::span(ambient, fp, (0..n).map(|i| fp.unit(n, i))).unwrap()
    }

    pub fn span(ambient: &Arc<Ambient>, fp: Fp, vectors: impl IntoIterator<Item = FpVec>) -> Result<Self> {
        let mut s = Self::zero(ambient, fp);
        for v in vectors {
            s.ech.insert(v)?;
        }
        Ok(s)
    }

    pub fn span_elements(ambient: &Arc<Ambient>, fp: Fp, elements: &[AlgebraElement]) -> Result<Self> {
        let vs: Result<Vec<FpVec>> = elements.iter().map(|a| to_vector(ambient, fp, a)).collect();
        Self::span(ambient, fp, vs?)
    }

    /// span{δ_g : g ∈ set}.
    pub fn span_monomials(ambient: &Arc<Ambient>, fp: Fp, set: &[Element]) -> Result<Self> {
        let n = ambient.len();
        let vs: Result<Vec<FpVec>> = set.iter().map(|g| Ok(fp.unit(n, ambient.require(g)?))).collect();
        Self::span(ambient, fp, vs?)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn fp(&self) -> Fp {
        self.ech.fp()
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn rows(&self) -> &[FpVec] {
        self.ech.rows()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        self.ech.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows().iter().all(|r| self.contains(r))
    }

    pub fn insert(&mut self, v: FpVec) -> Result<bool> {
        self.ech.insert(v)
    }

    pub fn row_element(&self, i: usize) -> AlgebraElement {
        to_element(&self.ambient, &self.ech.rows()[i])
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if !Arc::ptr_eq(&self.ambient, &other.ambient) && self.ambient != other.ambient {
            return Err(Error::Contract("subspaces live in different ambient enumerations".into()));
        }
        if self.fp() != other.fp() {
            return Err(Error::Contract("subspaces over different primes".into()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut out = self.clone();
        for r in other.rows() {
            out.ech.insert(r.clone())?;
        }
        Ok(out)
    }

    /// Orthogonal complement under the coordinate dot product.
    pub fn perp(&self) -> Subspace {
        Subspace::span(&self.ambient, self.fp(), self.ech.nullspace()).unwrap()
    }

    /// A ∩ B = (A⊥ + B⊥)⊥.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    /// span{f·s : f a basis row, s ∈ S}.
    pub fn right_multiply(&self, s: &[AlgebraElement], alg: &dyn MonomialAlgebra) -> Result<Subspace> {
        let fp = self.fp();
        let mut out = Subspace::zero(&self.ambient, fp);
        for row in self.rows() {
            let f = to_element(&self.ambient, row);
            for x in s {
                out.ech.insert(to_vector(&self.ambient, fp, &multiply(alg, &f, x)?)?)?;
            }
        }
        Ok(out)
    }
}

/// Product of two sparse algebra elements.
pub fn multiply(alg: &dyn MonomialAlgebra, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    let fp = alg.fp();
    let mut acc: HashMap<Element, u32> = HashMap::new();
    for (g, x) in a {
        for (h, y) in b {
            let (k, c) = alg.product(g, h)?;
            let c = fp.mul(c, fp.mul(*x, *y));
            if c != 0 {
                let e = acc.entry(k).or_insert(0);
                *e = fp.add(*e, c);
            }
        }
    }
    let mut out: AlgebraElement = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort();
    Ok(out)
}

pub fn to_vector(ambient: &Ambient, fp: Fp, a: &AlgebraElement) -> Result<FpVec> {
    let mut terms = Vec::with_capacity(a.len());
    for (g, c) in a {
        terms.push((ambient.require(g)?, *c));
    }
    Ok(fp.from_sparse(ambient.len(), terms))
}

pub fn to_element(ambient: &Ambient, v: &FpVec) -> AlgebraElement {
    v.support().into_iter().map(|(i, c)| (ambient.element(i).clone(), c)).collect()
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// (rank(F+FS) − rank F)/rank F, exactly.
pub fn invariance_defect(f: &Subspace, s: &[AlgebraElement], alg: &dyn MonomialAlgebra) -> Result<BigRational> {
    if f.rank() == 0 {
        return Err(Error::Contract("invariance defect of the zero subspace".into()));
    }
    let fs = f.right_multiply(s, alg)?;
    let total = f.sum(&fs)?;
    Ok(ratio(total.rank() - f.rank(), f.rank()))
}

/// (#(F ∪ FS) − #F)/#F for finite sets of group elements.
pub fn set_defect(group: &dyn Group, f: &[Element], s: &[Element]) -> Result<BigRational> {
    let set: HashSet<&Element> = f.iter().collect();
    if set.is_empty() {
        return Err(Error::Contract("set defect of the empty set".into()));
    }
    let mut union: HashSet<Element> = set.iter().map(|g| (*g).clone()).collect();
    for g in &set {
        for x in s {
            union.insert(group.mul(g, x));
        }
    }
    Ok(ratio(union.len() - set.len(), set.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ball, FiniteGroup, FreeAbelianGroup, LamplighterGroup};

    struct GroupAlg<'a>(&'a dyn Group, Fp);

    impl MonomialAlgebra for GroupAlg<'_> {
        fn fp(&self) -> Fp {
            self.1
        }
        fn product(&self, g: &Element, h: &Element) -> Result<(Element, u32)> {
            Ok((self.0.mul(g, h), 1))
        }
    }

    fn cyclic(n: u64) -> FiniteGroup {
        FiniteGroup::from_group(&FreeAbelianGroup::new(1, Some(n)), 100).unwrap()
    }

    #[test]
    fn spans_in_c2() {
        let g = cyclic(2);
        let amb = Ambient::new(vec![Element::Index(0), Element::Index(1)]).unwrap();
        let f2 = Fp::new(2).unwrap();
        let e = |v: &[u32]| f2.from_entries(v);
        assert_eq!(Subspace::span(&amb, f2, []).unwrap().rank(), 0);
        assert_eq!(Subspace::span(&amb, f2, [e(&[1, 1]), e(&[1, 1])]).unwrap().rank(), 1);
        assert_eq!(Subspace::span(&amb, f2, [e(&[1, 0]), e(&[0, 1]), e(&[1, 1])]).unwrap().rank(), 2);
        // (e+g)·g = g+e
        let f = Subspace::span(&amb, f2, [e(&[1, 1])]).unwrap();
        let gen = vec![(Element::Index(1), 1)];
        let fs = f.right_multiply(std::slice::from_ref(&gen), &GroupAlg(&g, f2)).unwrap();
        assert_eq!(fs, f);
        assert_eq!(invariance_defect(&f, &[gen], &GroupAlg(&g, f2)).unwrap(), ratio(0, 1));
    }

    #[test]
    fn intersection_and_sum() {
        let f2 = Fp::new(2).unwrap();
        let amb = Ambient::new((0..4).map(Element::Index).collect()).unwrap();
        let e = |v: &[u32]| f2.from_entries(v);
        let a = Subspace::span(&amb, f2, [e(&[1, 1, 0, 0]), e(&[1, 0, 1, 0])]).unwrap();
        let b = Subspace::span(&amb, f2, [e(&[1, 1, 0, 0])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), b);
        assert_eq!(a.sum(&Subspace::zero(&amb, f2)).unwrap(), a);
        let other = Ambient::new((0..4).rev().map(Element::Index).collect()).unwrap();
        assert!(a.sum(&Subspace::zero(&other, f2)).is_err());
    }

    #[test]
    fn box_defects_in_z2() {
        let g = FreeAbelianGroup::new(2, None);
        let b = ball(&g, 20).unwrap();
        let amb = Ambient::from_ball(&b);
        let f2 = Fp::new(2).unwrap();
        let boxed: Vec<Element> = (0..10).flat_map(|x| (0..10).map(move |y| (x, y))).map(|(x, y)| g.element(&[x, y])).collect();
        let gens: Vec<Element> = (0..4).map(|s| g.generator_element(s)).collect();
        assert_eq!(set_defect(&g, &boxed, &gens).unwrap(), ratio(2, 5));
        let field = PrimeField::new(2).unwrap();
        let alg = HeckeAlgebra::new(&g, &b, field, 1);
        let f = Subspace::span_monomials(&amb, f2, &boxed).unwrap();
        let s: Vec<AlgebraElement> = gens.iter().map(|x| vec![(x.clone(), 1)]).collect();
        assert_eq!(invariance_defect(&f, &s, &alg).unwrap(), ratio(2, 5));
    }

    #[test]
    fn dead_end_spans_are_invariant_in_the_crystal() {
        let g = LamplighterGroup::new();
        let b = ball(&g, 9).unwrap();
        let d = g.parse("[-1,0,1]@0").unwrap();
        let amb = Ambient::from_ball(&b);
        let f2 = Fp::new(2).unwrap();
        let alg = HeckeAlgebra::new(&g, &b, PrimeField::new(2).unwrap(), 0);
        let f = Subspace::span_monomials(&amb, f2, &[d]).unwrap();
        let s: Vec<AlgebraElement> = (0..3).map(|i| vec![(g.generator_element(i), 1)]).collect();
        let total = f.sum(&f.right_multiply(&s, &alg).unwrap()).unwrap();
        assert_eq!(total.rank(), 1);
        assert_eq!(invariance_defect(&f, &s, &alg).unwrap(), ratio(0, 1));
    }

    #[test]
    fn escaping_the_ambient_is_out_of_range() {
        let g = FreeAbelianGroup::new(1, None);
        let b = ball(&g, 2).unwrap();
        let amb = Ambient::from_ball(&b);
        let f2 = Fp::new(2).unwrap();
        let f = Subspace::span_monomials(&amb, f2, &[g.element(&[2])]).unwrap();
        let s = vec![vec![(g.element(&[1]), 1)]];
        assert!(matches!(f.right_multiply(&s, &GroupAlg(&g, f2)), Err(Error::OutOfRange(_))));
        assert!(invariance_defect(&Subspace::zero(&amb, f2), &s, &GroupAlg(&g, f2)).is_err());
    }
}
