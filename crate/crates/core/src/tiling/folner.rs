//! Inverse envelopes and the search for sets with small boundary.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::group::{ball_with_cap, Element, Group, GroupKind};
use crate::subspace::set_defect;

/// Elements beyond this in a single candidate set are a resource error.
pub const DEFAULT_SET_CAP: usize = 1 << 22;

/// AK* = {x : xK ∩ A ≠ ∅} = A·{k⁻¹ : k ∈ K}, sorted.
pub fn inverse_envelope(group: &dyn Group, a: &[Element], k: &[Element]) -> Vec<Element> {
    let kinv: Vec<Element> = k.iter().map(|x| group.inverse(x)).collect();
    let mut out: Vec<Element> = a.iter().flat_map(|x| kinv.iter().map(move |y| group.mul(x, y))).collect();
    out.sort();
    out.dedup();
    out
}

/// Number of elements of AK*.
pub fn inverse_envelope_size(group: &dyn Group, a: &[Element], k: &[Element]) -> usize {
    let kinv: Vec<Element> = k.iter().map(|x| group.inverse(x)).collect();
    let set: HashSet<Element> = a.iter().flat_map(|x| kinv.iter().map(move |y| group.mul(x, y))).collect();
    set.len()
}

/// #(AK) for a set A and a finite K.
pub fn product_size(group: &dyn Group, a: &[Element], k: &[Element]) -> usize {
    let set: HashSet<Element> = a.iter().flat_map(|x| k.iter().map(move |y| group.mul(x, y))).collect();
    set.len()
}

/// The box ∏ [lo_i, hi_i] in ℤᵈ, in lexicographic order.
pub fn int_box(bounds: &[(i64, i64)]) -> Vec<Element> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Element::Ints).collect()
}

/// A named candidate set.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub elements: Vec<Element>,
}

pub(crate) fn free_abelian_dim(group: &dyn Group) -> Option<usize> {
    match group.kind() {
        GroupKind::FreeAbelian { dim, modulus: None } => Some(dim),
        _ => None,
    }
}

/// Candidates at radius r: for ℤᵈ the boxes of side 2r and 2r+1 around the
/// origin, then the ball of radius r.
fn candidates_at(group: &dyn Group, r: usize, cap: usize) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    if let Some(d) = free_abelian_dim(group) {
        let r = r as i64;
        for (lo, hi) in [(-r + 1, r), (-r, r)] {
            if hi < lo {
                continue;
            }
            let side = (hi - lo + 1) as usize;
            if side.checked_pow(d as u32).is_none_or(|n| n > cap) {
                return Err(Error::Resource(format!("box of side {side} in Z^{d} exceeds {cap} elements")));
            }
            out.push(Candidate { label: format!("box side {side}"), elements: int_box(&vec![(lo, hi); d]) });
        }
    }
    let b = ball_with_cap(group, r, cap)?;
    out.push(Candidate { label: format!("ball radius {r}"), elements: b.elements().to_vec() });
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FolnerSet {
    pub label: String,
    pub elements: Vec<Element>,
    pub defect: BigRational,
}

/// First candidate F (by increasing radius) with set_defect(F, K) < bound.
/// Failure says nothing about amenability.
pub fn folner_search(group: &dyn Group, k: &[Element], bound: &BigRational, max_radius: usize) -> Result<FolnerSet> {
    folner_search_with_cap(group, k, bound, max_radius, DEFAULT_SET_CAP)
}

pub fn folner_search_with_cap(
    group: &dyn Group,
    k: &[Element],
    bound: &BigRational,
    max_radius: usize,
    cap: usize,
) -> Result<FolnerSet> {
    if !bound.is_positive() {
        return Err(Error::Contract(format!("bound {bound} must be positive")));
    }
    let mut best: Option<BigRational> = None;
    for r in 0..=max_radius {
        for c in candidates_at(group, r, cap)? {
            let defect = set_defect(group, &c.elements, k)?;
            if defect < *bound {
                return Ok(FolnerSet { label: c.label, elements: c.elements, defect });
            }
            if best.as_ref().is_none_or(|b| defect < *b) {
                best = Some(defect);
            }
        }
    }
    Err(Error::SearchFailed(format!(
        "no ball or box up to radius {max_radius} in {} has defect below {bound} (best {}); \
         this does not show the group is non-amenable",
        group.name(),
        best.map(|b| b.to_string()).unwrap_or_else(|| "none".into())
    )))
}
