//! The covering step: add translates xK of a tile to B while each new
//! translate overlaps what is already covered in at most δ#K points.
//!
//! Centers are chosen best-first: each round takes the coset with the
//! smallest current overlap, earliest in the enumeration of Ω on ties.
//! Every claim the covering lemma makes about the result is rechecked
//! from scratch with exact rationals.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::folner::inverse_envelope_size;
use super::params::{frac, int, theta_unchecked, ThetaParams};
use super::quotient::QuotientSet;
use crate::error::{Error, Result};
use crate::group::Element;

/// Outcome of each hypothesis and guarantee of the covering lemma.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaChecks {
    pub hypotheses_hold: bool,
    pub hypothesis_failures: Vec<String>,
    pub mu_ge_delta: bool,
    pub s_ge_1: bool,
    /// #(x_iK ∩ B_{i−1}) ≤ δ#K at every step.
    pub overlap_bound: bool,
    /// #B_s = ν'#Ω.
    pub count_identity: bool,
    /// #(B_sL*) ≤ α'#Ω.
    pub envelope_bound: bool,
    /// #(B_s ∩ xK) > δ#K for every x ∈ Ω.
    pub maximal: bool,
}

impl LemmaChecks {
    pub fn guarantees_hold(&self) -> bool {
        self.mu_ge_delta && self.s_ge_1 && self.overlap_bound && self.count_identity && self.envelope_bound && self.maximal
    }

    /// A description of the failure when the hypotheses held but a
    /// guarantee did not.
    pub fn counterexample(&self) -> Option<String> {
        if !self.hypotheses_hold || self.guarantees_hold() {
            return None;
        }
        let failed: Vec<&str> = [
            (self.mu_ge_delta, "mu >= delta"),
            (self.s_ge_1, "s >= 1"),
            (self.overlap_bound, "overlap bound"),
            (self.count_identity, "count identity"),
            (self.envelope_bound, "envelope bound"),
            (self.maximal, "maximality"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect();
        Some(format!("hypotheses held but failed: {}", failed.join(", ")))
    }
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    /// Chosen centers as coset indices, in order.
    pub centers: Vec<usize>,
    /// For each center, the indices into K of the points xk it newly covered.
    pub new_points: Vec<Vec<usize>>,
    /// Membership of B_s.
    pub covered: Vec<bool>,
    pub covered_count: usize,
    pub nu: BigRational,
    pub alpha: BigRational,
    pub mu: BigRational,
    /// Θ_μ(ν, α).
    pub nu_next: BigRational,
    pub alpha_next: BigRational,
    pub zeta: BigRational,
    pub checks: LemmaChecks,
}

fn envelope_count(table: &[Vec<usize>], mask: &[bool], n: usize) -> usize {
    (0..n).filter(|&x| table.iter().any(|row| mask[row[x]])).count()
}

fn overlaps(table: &[Vec<usize>], mask: &[bool], n: usize) -> Vec<usize> {
    (0..n).map(|x| table.iter().filter(|row| mask[row[x]]).count()).collect()
}

/// Standalone form: ν = #B/#Ω, α the least value meeting the lemma's
/// envelope hypotheses and ζ = max(1, #(KL*)/#K).
pub fn greedy_fill(
    omega: &QuotientSet,
    b: &[usize],
    k: &[Element],
    l: &[Element],
    delta: &BigRational,
) -> Result<GreedyOutcome> {
    let n = omega.len();
    let mut mask = vec![false; n];
    for &x in b {
        *mask
            .get_mut(x)
            .ok_or_else(|| Error::OutOfRange(format!("coset {x} not in a quotient of order {n}")))? = true;
    }
    let kt = omega.action_table(k);
    let lt = omega.action_table(l);
    let worst = envelope_count(&kt, &mask, n).max(envelope_count(&lt, &mask, n));
    let alpha = frac(worst, n);
    let nu = frac(mask.iter().filter(|&&m| m).count(), n);
    let kl = inverse_envelope_size(omega.group().as_ref(), k, l);
    let zeta = frac(kl, k.len().max(1)).max(BigRational::one());
    let params = ThetaParams::new(delta.clone(), zeta)?;
    greedy_fill_with(omega, &mask, k, l, &params, &nu, &alpha)
}

/// The covering step with (ν, α) and ζ supplied by the caller.
pub fn greedy_fill_with(
    omega: &QuotientSet,
    b: &[bool],
    k: &[Element],
    l: &[Element],
    params: &ThetaParams,
    nu: &BigRational,
    alpha: &BigRational,
) -> Result<GreedyOutcome> {
    let n = omega.len();
    if b.len() != n {
        return Err(Error::Contract(format!("B has {} entries for a quotient of order {n}", b.len())));
    }
    if k.is_empty() {
        return Err(Error::Contract("the tile K is empty".into()));
    }
    if *alpha < BigRational::zero() || *alpha >= BigRational::one() {
        return Err(Error::Contract(format!("alpha = {alpha} is not in [0, 1); B leaves no room to cover")));
    }
    let delta = &params.delta;
    let kt = omega.action_table(k);
    let mut seen = vec![usize::MAX; n];
    for x in 0..n {
        for row in &kt {
            if std::mem::replace(&mut seen[row[x]], x) == x {
                return Err(Error::Contract(format!("k -> xk is not injective on K at coset {x}")));
            }
        }
    }
    let lt = omega.action_table(l);
    let n_q = int(n);
    let k_q = int(k.len());

    let mut failures = Vec::new();
    let b_count = b.iter().filter(|&&m| m).count();
    if *nu < BigRational::zero() || *nu >= BigRational::one() {
        failures.push(format!("nu = {nu} not in [0, 1)"));
    }
    if int(b_count) != nu * &n_q {
        failures.push(format!("#B = {b_count} differs from nu #Omega"));
    }
    let kl = inverse_envelope_size(omega.group().as_ref(), k, l);
    if int(kl) > &params.zeta * &k_q {
        failures.push(format!("#(KL*) = {kl} exceeds zeta #K"));
    }
    let bk = envelope_count(&kt, b, n);
    if int(bk) > alpha * &n_q {
        failures.push(format!("#(BK*) = {bk} exceeds alpha #Omega"));
    }
    let bl = envelope_count(&lt, b, n);
    if int(bl) > alpha * &n_q {
        failures.push(format!("#(BL*) = {bl} exceeds alpha #Omega"));
    }

    // preimages: inv[j][y] = the x with x·K[j] = y
    let mut inv = vec![vec![0usize; n]; k.len()];
    for (j, row) in kt.iter().enumerate() {
        for (x, &y) in row.iter().enumerate() {
            inv[j][y] = x;
        }
    }
    let limit = (delta * &k_q).floor().to_integer().to_usize().unwrap_or(usize::MAX);
    let mut mask = b.to_vec();
    let mut overlap = overlaps(&kt, &mask, n);
    let mut centers = Vec::new();
    let mut new_points = Vec::new();
    for _ in 0..=n {
        let (x, &ov) = overlap.iter().enumerate().min_by_key(|&(x, &o)| (o, x)).expect("quotients are nonempty");
        if ov > limit {
            break;
        }
        let mut fresh = Vec::new();
        for (j, row) in kt.iter().enumerate() {
            let y = row[x];
            if !mask[y] {
                mask[y] = true;
                fresh.push(j);
                for pre in &inv {
                    overlap[pre[y]] += 1;
                }
            }
        }
        centers.push(x);
        new_points.push(fresh);
    }

    // independent rechecks
    let covered_count = mask.iter().filter(|&&m| m).count();
    let mut replay = b.to_vec();
    let mut overlap_bound = true;
    for &x in &centers {
        let ov = kt.iter().filter(|row| replay[row[x]]).count();
        overlap_bound &= int(ov) <= delta * &k_q;
        for row in &kt {
            replay[row[x]] = true;
        }
    }
    overlap_bound &= replay == mask;
    let maximal = overlaps(&kt, &mask, n).into_iter().all(|o| int(o) > delta * &k_q);
    let mu = (frac(covered_count, n) - nu) / (BigRational::one() - alpha);
    let (nu_next, alpha_next) = theta_unchecked(params, &mu, nu, alpha);
    let count_identity = int(covered_count) == &nu_next * &n_q;
    let envelope_bound = int(envelope_count(&lt, &mask, n)) <= &alpha_next * &n_q;
    let checks = LemmaChecks {
        hypotheses_hold: failures.is_empty(),
        hypothesis_failures: failures,
        mu_ge_delta: mu >= *delta,
        s_ge_1: !centers.is_empty(),
        overlap_bound,
        count_identity,
        envelope_bound,
        maximal,
    };
    Ok(GreedyOutcome {
        centers,
        new_points,
        covered: mask,
        covered_count,
        nu: nu.clone(),
        alpha: alpha.clone(),
        mu,
        nu_next,
        alpha_next,
        zeta: params.zeta.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FreeAbelianGroup, Group};
    use crate::tiling::folner::int_box;
    use crate::tiling::quotient::QuotientChain;
    use std::sync::Arc;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn chain(d: usize) -> QuotientChain {
        let g: Arc<dyn Group> = Arc::new(FreeAbelianGroup::new(d, None));
        QuotientChain::powers(g, 2).unwrap()
    }

    #[test]
    fn cyclic_eight() {
        let omega = chain(1).level(3).unwrap();
        let k = int_box(&[(0, 3)]);
        let out = greedy_fill(&omega, &[], &k, &[Element::Ints(vec![0])], &q(3, 10)).unwrap();
        assert_eq!(out.centers, vec![0, 4]);
        assert_eq!(out.covered_count, 8);
        assert_eq!(out.mu, q(1, 1));
        assert!(out.checks.guarantees_hold(), "{:?}", out.checks);
    }

    #[test]
    fn torus_tiled_by_boxes() {
        let omega = chain(2).level(4).unwrap();
        let k = int_box(&[(0, 3), (0, 3)]);
        let out = greedy_fill(&omega, &[], &k, &k, &q(1, 10)).unwrap();
        assert_eq!(out.centers.len(), 16);
        assert!(out.new_points.iter().all(|p| p.len() == 16));
        assert_eq!((out.covered_count, out.mu.clone()), (256, q(1, 1)));
        assert!(out.checks.guarantees_hold());
    }

    #[test]
    fn full_b_violates_alpha() {
        let omega = chain(1).level(3).unwrap();
        let all: Vec<usize> = (0..8).collect();
        let k = int_box(&[(0, 1)]);
        assert!(matches!(greedy_fill(&omega, &all, &k, &k, &q(1, 4)), Err(Error::Contract(_))));
    }

    #[test]
    fn non_injective_tiles_are_rejected() {
        let omega = chain(1).level(2).unwrap();
        let k = int_box(&[(0, 4)]);
        assert!(matches!(greedy_fill(&omega, &[], &k, &k, &q(1, 4)), Err(Error::Contract(_))));
    }

    #[test]
    fn partial_start() {
        let omega = chain(1).level(5).unwrap();
        let k = int_box(&[(0, 3)]);
        let b: Vec<usize> = (0..6).collect();
        let out = greedy_fill(&omega, &b, &k, &k, &q(1, 4)).unwrap();
        assert!(out.checks.maximal && out.checks.overlap_bound);
        assert!(out.centers.len() <= omega.len());
        assert!(out.checks.counterexample().is_none());
    }
}
