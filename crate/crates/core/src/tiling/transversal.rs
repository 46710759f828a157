//! Almost-invariant transversals of the subgroups in a quotient chain.
//!
//! The tower K₁, K₂, … is grown lazily. For each height h the finite
//! quotient is chosen, the covering step runs from level h down to 1,
//! and the construction stops as soon as the covered fraction ν₀ exceeds
//! 1 − ε/(2#K), which is all the final count needs. The recipe height,
//! where this is guaranteed, bounds h.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::folner::{free_abelian_dim, int_box, inverse_envelope_size, product_size, DEFAULT_SET_CAP};
use super::greedy::{greedy_fill_with, LemmaChecks};
use super::params::{
    choose_delta, choose_zeta, delta_ok, int, recipe_height, theta_unchecked, threshold, zeta_ok, ThetaParams,
};
use super::quotient::{ChainSpec, QuotientChain};
use crate::error::{Error, Result};
use crate::group::{ball_with_cap, Element, Group};
use crate::report::{fraction_field, fraction_json};
use crate::subspace::set_defect;

#[derive(Clone, Debug)]
pub struct TilingOptions {
    pub delta: Option<BigRational>,
    pub zeta: Option<BigRational>,
    /// Run exactly this tower height instead of growing lazily.
    pub height: Option<usize>,
    /// Tower candidates for ℤᵈ are boxes of side baseᵏ.
    pub box_base: u64,
    /// Largest ball radius tried for other groups.
    pub max_radius: usize,
    pub set_cap: usize,
    pub omega_cap: usize,
    pub recipe_cap: usize,
}

impl Default for TilingOptions {
    fn default() -> Self {
        TilingOptions {
            delta: None,
            zeta: None,
            height: None,
            box_base: 2,
            max_radius: 12,
            set_cap: DEFAULT_SET_CAP,
            omega_cap: 1 << 22,
            recipe_cap: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub label: String,
    pub elements: Vec<Element>,
    /// Box bounds when the level is a box in ℤᵈ.
    bounds: Option<Vec<(i64, i64)>>,
    candidate: usize,
}

#[derive(Clone, Debug)]
pub struct Placement {
    pub level: usize,
    pub center: Element,
    /// K_{i,j} ⊆ K_i.
    pub tile: Vec<Element>,
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub level: usize,
    pub nu: BigRational,
    pub alpha: BigRational,
    pub mu: BigRational,
    pub s: usize,
    pub checks: LemmaChecks,
}

#[derive(Clone, Debug)]
pub struct TilingCertificate {
    pub group: String,
    pub k: Vec<Element>,
    pub epsilon: BigRational,
    pub params: ThetaParams,
    pub threshold: BigRational,
    pub recipe_height: usize,
    pub height: usize,
    pub chain: ChainSpec,
    pub quotient_level: usize,
    pub quotient_order: usize,
    /// K₀ = K, K₁, …, K_h.
    pub tower: Vec<TowerLevel>,
    pub placements: Vec<Placement>,
    pub remainder: Vec<Element>,
    pub transversal: Vec<Element>,
    pub defect: BigRational,
    pub nu0: BigRational,
    pub trace: Vec<TraceStep>,
}

impl TilingCertificate {
    /// Whether every covering step met all of the lemma's guarantees.
    pub fn all_steps_hold(&self) -> bool {
        self.trace.iter().all(|t| t.checks.guarantees_hold())
    }

    pub fn to_json(&self, group: &dyn Group) -> Value {
        let fmt = |v: &[Element]| -> Vec<String> { v.iter().map(|g| group.format(g)).collect() };
        json!({
            "group": self.group,
            "K": fmt(&self.k),
            "epsilon": fraction_json(&self.epsilon),
            "delta": fraction_json(&self.params.delta),
            "zeta": fraction_json(&self.params.zeta),
            "threshold": fraction_json(&self.threshold),
            "recipe_height": self.recipe_height,
            "height": self.height,
            "chain": self.chain,
            "quotient_level": self.quotient_level,
            "quotient_order": self.quotient_order,
            "tower": self.tower.iter().enumerate().map(|(i, t)| json!({
                "level": i,
                "label": t.label,
                "size": t.elements.len(),
                "elements": fmt(&t.elements),
            })).collect::<Vec<_>>(),
            "placements": self.placements.iter().map(|p| json!({
                "level": p.level,
                "center": group.format(&p.center),
                "tile": fmt(&p.tile),
            })).collect::<Vec<_>>(),
            "remainder": fmt(&self.remainder),
            "transversal": fmt(&self.transversal),
            "transversal_size": self.transversal.len(),
            "defect": fraction_json(&self.defect),
            "nu0": fraction_json(&self.nu0),
            "trace": self.trace.iter().map(|t| json!({
                "level": t.level,
                "nu": fraction_json(&t.nu),
                "alpha": fraction_json(&t.alpha),
                "mu": fraction_json(&t.mu),
                "s": t.s,
                "checks": t.checks,
            })).collect::<Vec<_>>(),
        })
    }
}

enum TowerSource {
    Boxes { dim: usize, base: u64 },
    Balls { max_radius: usize },
}

impl TowerSource {
    fn candidate(&self, group: &dyn Group, idx: usize, cap: usize) -> Result<Option<TowerLevel>> {
        match *self {
            TowerSource::Boxes { dim, base } => {
                let side = match (base as usize).checked_pow(idx as u32) {
                    Some(s) if s.checked_pow(dim as u32).is_some_and(|n| n <= cap) => s,
                    _ => return Ok(None),
                };
                let bounds = vec![(0, side as i64 - 1); dim];
                Ok(Some(TowerLevel {
                    label: format!("box side {side}"),
                    elements: int_box(&bounds),
                    bounds: Some(bounds),
                    candidate: idx,
                }))
            }
            TowerSource::Balls { max_radius } => {
                if idx > max_radius {
                    return Ok(None);
                }
                match ball_with_cap(group, idx, cap) {
                    Ok(b) => Ok(Some(TowerLevel {
                        label: format!("ball radius {idx}"),
                        elements: b.elements().to_vec(),
                        bounds: None,
                        candidate: idx,
                    })),
                    Err(Error::Resource(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            }
        }
    }
}

/// #(AB*) for tower levels, by box arithmetic when both are boxes.
fn envelope(group: &dyn Group, a: &TowerLevel, b: &TowerLevel) -> usize {
    match (&a.bounds, &b.bounds) {
        (Some(x), Some(y)) => x.iter().zip(y).map(|(&(al, ah), &(bl, bh))| ((ah - bl) - (al - bh) + 1) as usize).product(),
        _ => inverse_envelope_size(group, &a.elements, &b.elements),
    }
}

pub(crate) struct Builder<'a> {
    pub group: &'a dyn Group,
    pub k: Vec<Element>,
    pub eps: BigRational,
    pub params: ThetaParams,
    source: TowerSource,
    opts: &'a TilingOptions,
    pub threshold: BigRational,
    pub recipe_height: usize,
}

impl Builder<'_> {
    /// Find K_i given K₁ … K_{i−1}.
    pub fn next_level(&self, tower: &[TowerLevel]) -> Result<TowerLevel> {
        let i = tower.len();
        let growth = (BigRational::one() + &self.eps / int(2)) * (BigRational::one() - &self.params.delta);
        let start = if i == 1 { 0 } else { tower[i - 1].candidate + 1 };
        let mut last_failure = String::from("no candidate sets available");
        for idx in start.. {
            let Some(c) = self.source.candidate(self.group, idx, self.opts.set_cap)? else {
                break;
            };
            let size = int(c.elements.len());
            let kk = product_size(self.group, &c.elements, &self.k);
            if int(kk) > &growth * &size {
                last_failure = format!("{}: #(K_{i}K) = {kk} exceeds (1+eps/2)(1-delta)#K_{i}", c.label);
                continue;
            }
            let bad = (1..i).find(|&j| int(envelope(self.group, &c, &tower[j])) >= &self.params.zeta * &size);
            if let Some(j) = bad {
                last_failure = format!("{}: #(K_{i}K_{j}*) is not below zeta #K_{i}", c.label);
                continue;
            }
            return Ok(c);
        }
        Err(Error::SearchFailed(format!(
            "Rokhlin tower level {i} not found within the candidate budget; last candidate failed: {last_failure}"
        )))
    }

    /// Least quotient level where every K_i embeds.
    pub fn quotient_level(&self, chain: &QuotientChain, tower: &[TowerLevel], from: usize) -> Result<usize> {
        for n in from.. {
            if chain.levels().is_some_and(|l| n >= l) {
                break;
            }
            match chain.order(n) {
                Some(o) if o <= self.opts.omega_cap => {}
                _ => break,
            }
            let q = chain.level(n)?;
            if tower[1..].iter().all(|t| q.injective_on(&t.elements)) {
                return Ok(n);
            }
        }
        Err(Error::SearchFailed(format!(
            "no quotient in the chain of order at most {} separates K_iK_i* from the subgroup",
            self.opts.omega_cap
        )))
    }
}

/// Parameters, recipe height and tower source for K and ε.
pub(crate) fn plan<'a>(g: &'a dyn Group, k: &[Element], eps: &BigRational, opts: &'a TilingOptions) -> Result<Builder<'a>> {
    let mut kset: Vec<Element> = k.to_vec();
    kset.sort();
    kset.dedup();
    if !kset.contains(&g.identity()) {
        return Err(Error::Contract("K must contain the identity".into()));
    }
    let delta = match &opts.delta {
        Some(d) if delta_ok(d, kset.len(), eps) => d.clone(),
        Some(d) => return Err(Error::Contract(format!("delta = {d} violates the overlap conditions"))),
        None => choose_delta(kset.len(), eps)?,
    };
    let zeta = match &opts.zeta {
        Some(z) if zeta_ok(z, &delta, kset.len(), eps) => z.clone(),
        Some(z) => return Err(Error::Contract(format!("zeta = {z} violates the Følner-constant condition"))),
        None => choose_zeta(kset.len(), eps, &delta)?,
    };
    let params = ThetaParams::new(delta, zeta)?;
    let threshold = threshold(kset.len(), eps);
    let recipe_height = recipe_height(&params, &threshold, opts.recipe_cap)?;
    let source = match free_abelian_dim(g) {
        Some(dim) => TowerSource::Boxes { dim, base: opts.box_base.max(2) },
        None => TowerSource::Balls { max_radius: opts.max_radius },
    };
    Ok(Builder { group: g, k: kset, eps: eps.clone(), params, source, opts, threshold, recipe_height })
}

impl Builder<'_> {
    /// Heights to try: the fixed one, or 1, 2, … up to the recipe height.
    pub fn heights(&self) -> Vec<usize> {
        match self.opts.height {
            Some(h) => vec![h],
            None if self.recipe_height == 0 => vec![0],
            None => (1..=self.recipe_height).collect(),
        }
    }

    pub fn base_level(&self) -> TowerLevel {
        TowerLevel { label: "K".into(), elements: self.k.clone(), bounds: None, candidate: 0 }
    }
}

/// A (K, ε)-invariant transversal for some subgroup of `chain`.
pub fn build_transversal(
    group: Arc<dyn Group>,
    k: &[Element],
    eps: &BigRational,
    chain: &QuotientChain,
    opts: &TilingOptions,
) -> Result<TilingCertificate> {
    let b = plan(group.as_ref(), k, eps, opts)?;
    let t_recipe = b.recipe_height;
    let thr = b.threshold.clone();
    let heights = b.heights();
    let mut tower = vec![b.base_level()];
    let mut level_from = 0;
    let mut last = None;
    for &h in &heights {
        while tower.len() <= h {
            let next = b.next_level(&tower)?;
            tower.push(next);
        }
        let n = b.quotient_level(chain, &tower[..=h], level_from)?;
        level_from = n;
        let cert = run_levels(&b, group.clone(), chain, &tower[..=h], n, t_recipe, &thr)?;
        let done = cert.nu0 > thr;
        last = Some(cert);
        if done {
            break;
        }
    }
    let cert = last.expect("at least one height is tried");
    if cert.defect >= *eps {
        return Err(Error::SearchFailed(format!(
            "transversal of {} cosets has defect {} >= epsilon = {eps}",
            cert.quotient_order, cert.defect
        )));
    }
    Ok(cert)
}

fn run_levels(
    b: &Builder,
    group: Arc<dyn Group>,
    chain: &QuotientChain,
    tower: &[TowerLevel],
    n: usize,
    t_recipe: usize,
    thr: &BigRational,
) -> Result<TilingCertificate> {
    let g = group.as_ref();
    let omega = chain.level(n)?;
    let size = omega.len();
    let mut covered = vec![false; size];
    let (mut nu, mut alpha) = (BigRational::zero(), BigRational::zero());
    let mut placements = Vec::new();
    let mut trace = Vec::new();
    let h = tower.len() - 1;
    for i in (1..=h).rev() {
        if alpha >= BigRational::one() {
            break;
        }
        let out = greedy_fill_with(
            &omega,
            &covered,
            &tower[i].elements,
            &tower[i - 1].elements,
            &b.params,
            &nu,
            &alpha,
        )?;
        for (x, fresh) in out.centers.iter().zip(&out.new_points) {
            placements.push(Placement {
                level: i,
                center: omega.lift(*x),
                tile: fresh.iter().map(|&j| tower[i].elements[j].clone()).collect(),
            });
        }
        trace.push(TraceStep {
            level: i,
            nu: nu.clone(),
            alpha: alpha.clone(),
            mu: out.mu.clone(),
            s: out.centers.len(),
            checks: out.checks.clone(),
        });
        (nu, alpha) = theta_unchecked(&b.params, &out.mu, &nu, &alpha);
        covered = out.covered;
    }
    let remainder: Vec<Element> = (0..size).filter(|&x| !covered[x]).map(|x| omega.lift(x)).collect();
    let mut transversal = remainder.clone();
    for p in &placements {
        transversal.extend(p.tile.iter().map(|k| g.mul(&p.center, k)));
    }
    let defect = set_defect(g, &transversal, &b.k)?;
    Ok(TilingCertificate {
        group: g.name().to_string(),
        k: b.k.clone(),
        epsilon: b.eps.clone(),
        params: b.params.clone(),
        threshold: thr.clone(),
        recipe_height: t_recipe,
        height: h,
        chain: chain.spec().clone(),
        quotient_level: n,
        quotient_order: size,
        tower: tower.to_vec(),
        placements,
        remainder,
        transversal,
        defect,
        nu0: nu,
        trace,
    })
}

/// Result of rechecking a certificate from its JSON form.
#[derive(Clone, Debug, Default)]
pub struct Verification {
    pub failures: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.failures.push(what());
        }
    }
}

fn elements(group: &dyn Group, v: &Value, key: &str) -> Result<Vec<Element>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("certificate lacks {key:?}")))?
        .iter()
        .map(|x| x.as_str().ok_or_else(|| Error::Parse(format!("{key:?} entries must be strings"))).and_then(|s| group.parse(s)))
        .collect()
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    v.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| Error::Parse(format!("certificate lacks {key:?}")))
}

/// Recheck a certificate using only its JSON and the group: the pieces are
/// disjoint and make up the transversal, π is a bijection onto the
/// quotient, the tower meets its growth bound and the defect recounts.
pub fn verify_tiling_certificate(group: Arc<dyn Group>, v: &Value) -> Result<Verification> {
    let g = group.as_ref();
    let mut out = Verification::default();
    let k = elements(g, v, "K")?;
    let eps = fraction_field(v, "epsilon")?;
    let delta = fraction_field(v, "delta")?;
    let recorded = fraction_field(v, "defect")?;
    let spec: ChainSpec = serde_json::from_value(v.get("chain").cloned().ok_or_else(|| Error::Parse("certificate lacks \"chain\"".into()))?)
        .map_err(|e| Error::Parse(format!("chain: {e}")))?;
    let n = usize_field(v, "quotient_level")?;
    let tower: Vec<Vec<Element>> = v
        .get("tower")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("certificate lacks \"tower\"".into()))?
        .iter()
        .map(|t| elements(g, t, "elements"))
        .collect::<Result<_>>()?;
    let remainder = elements(g, v, "remainder")?;
    let transversal = elements(g, v, "transversal")?;

    let kset: HashSet<&Element> = k.iter().collect();
    out.check(kset.contains(&g.identity()), || "K does not contain the identity".into());
    out.check(tower.first().is_some_and(|t0| t0.iter().collect::<HashSet<_>>() == kset), || "tower level 0 is not K".into());
    let chain = QuotientChain::from_spec(group.clone(), spec)?;
    let omega = chain.level(n)?;
    let growth = (BigRational::one() + &eps / int(2)) * (BigRational::one() - &delta);
    for (i, t) in tower.iter().enumerate().skip(1) {
        out.check(int(product_size(g, t, &k)) <= &growth * int(t.len()), || format!("tower level {i} grows too much under K"));
        out.check(omega.injective_on(t), || format!("tower level {i} does not embed in the quotient"));
    }

    let mut pieces: Vec<Element> = remainder.clone();
    for (j, p) in v.get("placements").and_then(Value::as_array).ok_or_else(|| Error::Parse("certificate lacks \"placements\"".into()))?.iter().enumerate() {
        let level = usize_field(p, "level")?;
        let center = g.parse(p.get("center").and_then(Value::as_str).ok_or_else(|| Error::Parse("placement lacks a center".into()))?)?;
        let tile = elements(g, p, "tile")?;
        match tower.get(level) {
            Some(ki) if level > 0 => {
                let ks: HashSet<&Element> = ki.iter().collect();
                out.check(tile.iter().all(|x| ks.contains(x)), || format!("placement {j}: tile is not inside K_{level}"));
                out.check(
                    int(tile.len()) >= (BigRational::one() - &delta) * int(ki.len()),
                    || format!("placement {j}: tile keeps less than (1-delta)#K_{level} points"),
                );
            }
            _ => out.failures.push(format!("placement {j}: level {level} is not a tower level")),
        }
        pieces.extend(tile.iter().map(|x| g.mul(&center, x)));
    }
    let distinct: HashSet<&Element> = pieces.iter().collect();
    out.check(distinct.len() == pieces.len(), || "remainder and tiles are not disjoint".into());
    let tset: HashSet<&Element> = transversal.iter().collect();
    out.check(tset == distinct && tset.len() == transversal.len(), || "transversal differs from remainder plus tiles".into());
    let images: HashSet<usize> = transversal.iter().map(|x| omega.project(x)).collect();
    out.check(
        images.len() == transversal.len() && transversal.len() == omega.len(),
        || format!("projection of {} elements onto {} cosets is not a bijection", transversal.len(), omega.len()),
    );
    if !transversal.is_empty() {
        let defect = set_defect(g, &transversal, &k)?;
        out.check(defect == recorded, || format!("recounted defect {defect} differs from recorded {recorded}"));
        out.check(defect < eps, || format!("defect {defect} is not below epsilon {eps}"));
    } else {
        out.failures.push("empty transversal".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FreeAbelianGroup;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn setup(d: usize) -> (Arc<dyn Group>, QuotientChain) {
        let g: Arc<dyn Group> = Arc::new(FreeAbelianGroup::new(d, None));
        let c = QuotientChain::powers(g.clone(), 2).unwrap();
        (g, c)
    }

    #[test]
    fn integers() {
        let (g, chain) = setup(1);
        let k = int_box(&[(-1, 1)]);
        let cert = build_transversal(g.clone(), &k, &q(1, 2), &chain, &TilingOptions::default()).unwrap();
        assert_eq!(cert.transversal.len(), 1 << cert.quotient_level);
        assert!(cert.defect < q(1, 2));
        assert!(cert.all_steps_hold());
        assert_eq!((cert.params.delta.clone(), cert.params.zeta.clone()), (q(1, 16), q(65, 64)));
        let v = cert.to_json(g.as_ref());
        let check = verify_tiling_certificate(g.clone(), &v).unwrap();
        assert!(check.ok(), "{:?}", check.failures);
    }

    #[test]
    fn trivial_k() {
        let (g, chain) = setup(1);
        let cert = build_transversal(g, &[Element::Ints(vec![0])], &q(1, 3), &chain, &TilingOptions::default()).unwrap();
        assert_eq!(cert.defect, q(0, 1));
    }

    #[test]
    fn tampering_is_detected() {
        let (g, chain) = setup(1);
        let k = int_box(&[(-1, 1)]);
        let cert = build_transversal(g.clone(), &k, &q(1, 2), &chain, &TilingOptions::default()).unwrap();
        let mut v = cert.to_json(g.as_ref());
        v["transversal"][0] = json!("(1000)");
        assert!(!verify_tiling_certificate(g.clone(), &v).unwrap().ok());
        let mut v = cert.to_json(g.as_ref());
        v["defect"] = fraction_json(&q(1, 1000));
        assert!(!verify_tiling_certificate(g, &v).unwrap().ok());
    }

    #[test]
    fn k_without_identity() {
        let (g, chain) = setup(1);
        let r = build_transversal(g, &[Element::Ints(vec![1])], &q(1, 2), &chain, &TilingOptions::default());
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn fixed_height_two() {
        let (g, chain) = setup(1);
        let k = int_box(&[(-1, 1)]);
        let opts = TilingOptions { height: Some(2), ..Default::default() };
        let cert = build_transversal(g.clone(), &k, &q(1, 2), &chain, &opts).unwrap();
        assert_eq!(cert.tower.len(), 3);
        assert!(verify_tiling_certificate(g, &cert.to_json(cert_group().as_ref())).unwrap().ok());
    }

    fn cert_group() -> Arc<dyn Group> {
        Arc::new(FreeAbelianGroup::new(1, None))
    }
}
