//! Experimental: the tiling construction with subspaces of 𝔽_p[ℤᵈ] in
//! place of subsets of ℤᵈ, dimensions in place of cardinalities.
//!
//! The linear covering lemma this mirrors is known to be flawed, so the
//! probe only records, step by step, which of its assertions held on the
//! data. It never reports a conclusion about complements in general.
//!
//! Units of 𝔽_p[ℤᵈ] are the nonzero monomials c·g, so an i-subspace given
//! by a basis of units is the span of a finite set of group elements.
//! Work in Ω = 𝔽_p[ℤᵈ/N] is done with echelon forms; on the ℤᵈ side the
//! spans are of distinct group elements and dimensions are counts.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::folner::{free_abelian_dim, inverse_envelope_size};
use super::params::{frac, int, theta_unchecked, ThetaParams};
use super::quotient::{ChainSpec, QuotientChain, QuotientSet};
use super::transversal::{plan, TilingOptions, TowerLevel};
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::linalg::{Echelon, Fp, FpVec};
use crate::report::fraction_json;
use crate::subspace::{set_defect, AlgebraElement};

/// Largest #Ω · dim K_i the probe will handle.
pub const PROBE_CAP: usize = 1 << 16;

#[derive(Clone, Debug, Serialize)]
pub struct ProbeAssertions {
    pub lemma_hypotheses: bool,
    pub hypothesis_failures: Vec<String>,
    pub mu_ge_delta: bool,
    pub s_ge_1: bool,
    /// dim(x_iK ∩ B_{i−1}) ≤ δ dim K at every step.
    pub overlap_bound: bool,
    /// dim B_s = ν' dim Ω.
    pub dim_identity: bool,
    /// dim(B_sL*) ≤ α' dim Ω.
    pub envelope_bound: bool,
    /// dim(B_s ∩ xK) > δ dim K for every coset x.
    pub maximal: bool,
    /// dim(x K_{i,j}) ≥ (1−δ) dim K_i for every piece.
    pub piece_dimension_bound: bool,
}

impl ProbeAssertions {
    pub fn all_held(&self) -> bool {
        self.mu_ge_delta
            && self.s_ge_1
            && self.overlap_bound
            && self.dim_identity
            && self.envelope_bound
            && self.maximal
            && self.piece_dimension_bound
    }
}

#[derive(Clone, Debug)]
pub struct ProbeStep {
    pub level: usize,
    pub nu: BigRational,
    pub alpha: BigRational,
    pub mu: BigRational,
    pub s: usize,
    pub assertions: ProbeAssertions,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub group: String,
    pub p: u32,
    pub basis: Vec<Element>,
    pub epsilon: BigRational,
    pub delta: BigRational,
    pub zeta: BigRational,
    pub threshold: BigRational,
    pub recipe_height: usize,
    pub height: usize,
    pub chain: ChainSpec,
    pub quotient_level: usize,
    pub quotient_dim: usize,
    pub tower_dims: Vec<usize>,
    pub steps: Vec<ProbeStep>,
    pub complement_dim: usize,
    pub projection_bijective: bool,
    pub defect: BigRational,
    pub nu0: BigRational,
}

impl ProbeReport {
    pub fn lemma_assertions_held(&self) -> bool {
        self.steps.iter().all(|s| s.assertions.all_held())
    }

    pub fn to_json(&self, group: &dyn Group) -> Value {
        json!({
            "experimental": true,
            "note": "per-step assertions are observations on this input only; no general statement is drawn from them",
            "group": self.group,
            "p": self.p,
            "basis": self.basis.iter().map(|g| group.format(g)).collect::<Vec<_>>(),
            "epsilon": fraction_json(&self.epsilon),
            "delta": fraction_json(&self.delta),
            "zeta": fraction_json(&self.zeta),
            "threshold": fraction_json(&self.threshold),
            "recipe_height": self.recipe_height,
            "height": self.height,
            "chain": self.chain,
            "quotient_level": self.quotient_level,
            "quotient_dim": self.quotient_dim,
            "tower_dims": self.tower_dims,
            "steps": self.steps.iter().map(|s| json!({
                "level": s.level,
                "nu": fraction_json(&s.nu),
                "alpha": fraction_json(&s.alpha),
                "mu": fraction_json(&s.mu),
                "s": s.s,
                "assertions": s.assertions,
            })).collect::<Vec<_>>(),
            "complement": {
                "dim": self.complement_dim,
                "quotient_dim": self.quotient_dim,
                "projection_bijective": self.projection_bijective,
            },
            "defect": fraction_json(&self.defect),
            "defect_below_epsilon": self.defect < self.epsilon,
            "nu0": fraction_json(&self.nu0),
            "lemma_assertions_held": self.lemma_assertions_held(),
        })
    }
}

/// The group elements behind a basis of units.
fn unit_basis(fp: Fp, basis: &[AlgebraElement], group: &dyn Group) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let terms: Vec<&Element> = b.iter().filter(|(_, c)| fp.from_i64(*c as i64) != 0).map(|(g, _)| g).collect();
        let mut distinct = terms.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != 1 || terms.len() != 1 {
            let shown: Vec<String> = b.iter().map(|(g, c)| format!("{c}*{}", group.format(g))).collect();
            return Err(Error::Contract(format!(
                "basis element {i} ({}) is not invertible: units of F_p[Z^d] are nonzero monomials",
                shown.join(" + ")
            )));
        }
        out.push(terms[0].clone());
    }
    let mut sorted = out.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != out.len() {
        return Err(Error::Contract("basis elements are linearly dependent".into()));
    }
    Ok(sorted)
}

fn permute(fp: Fp, v: &FpVec, table: &[usize]) -> FpVec {
    fp.from_sparse(v.len(), v.support().into_iter().map(|(y, c)| (table[y], c)))
}

/// dim(B·span{g⁻¹ : g ∈ set}), given tables of the inverses' actions.
fn envelope_dim(b: &Echelon, inv_tables: &[Vec<usize>]) -> Result<usize> {
    let fp = b.fp();
    let mut e = Echelon::new(fp, b.ncols());
    for t in inv_tables {
        for r in b.rows() {
            e.insert(permute(fp, r, t))?;
        }
    }
    Ok(e.rank())
}

fn overlap_dim(b: &Echelon, kt: &[Vec<usize>], x: usize) -> Result<usize> {
    let fp = b.fp();
    let mut e = b.clone();
    let mut grown = 0;
    for row in kt {
        if e.insert(fp.unit(b.ncols(), row[x]))? {
            grown += 1;
        }
    }
    Ok(kt.len() - grown)
}

struct LinearStep {
    centers: Vec<usize>,
    pieces: Vec<Vec<usize>>,
    mu: BigRational,
    assertions: ProbeAssertions,
}

#[allow(clippy::too_many_arguments)]
fn linear_fill(
    omega: &QuotientSet,
    b: &mut Echelon,
    k: &[Element],
    l: &[Element],
    delta: &BigRational,
    zeta: &BigRational,
    nu: &BigRational,
    alpha: &BigRational,
) -> Result<LinearStep> {
    let g = omega.group().as_ref();
    let n = omega.len();
    let fp = b.fp();
    if n.saturating_mul(k.len()) > PROBE_CAP {
        return Err(Error::Resource(format!("probe step of size {n} x {} exceeds {PROBE_CAP}", k.len())));
    }
    let kt = omega.action_table(k);
    let kinv: Vec<Element> = k.iter().map(|x| g.inverse(x)).collect();
    let linv: Vec<Element> = l.iter().map(|x| g.inverse(x)).collect();
    let kinv_t = omega.action_table(&kinv);
    let linv_t = omega.action_table(&linv);
    let (n_q, k_q) = (int(n), int(k.len()));

    let mut failures = Vec::new();
    if int(inverse_envelope_size(g, k, l)) > zeta * &k_q {
        failures.push("dim(KL*) exceeds zeta dim K".to_string());
    }
    if int(b.rank()) != nu * &n_q {
        failures.push("dim B differs from nu dim Omega".to_string());
    }
    if int(envelope_dim(b, &kinv_t)?) > alpha * &n_q {
        failures.push("dim(BK*) exceeds alpha dim Omega".to_string());
    }
    if int(envelope_dim(b, &linv_t)?) > alpha * &n_q {
        failures.push("dim(BL*) exceeds alpha dim Omega".to_string());
    }

    let bound = delta * &k_q;
    let mut centers = Vec::new();
    let mut pieces = Vec::new();
    let mut overlap_bound = true;
    for _ in 0..=n {
        let mut best: Option<(usize, usize)> = None;
        for x in 0..n {
            let ov = overlap_dim(b, &kt, x)?;
            if best.is_none_or(|(_, o)| ov < o) {
                best = Some((x, ov));
            }
        }
        let (x, ov) = best.expect("quotients are nonempty");
        if int(ov) > bound {
            break;
        }
        overlap_bound &= int(ov) <= bound;
        let mut piece = Vec::new();
        for (j, row) in kt.iter().enumerate() {
            if b.insert(fp.unit(n, row[x]))? {
                piece.push(j);
            }
        }
        centers.push(x);
        pieces.push(piece);
    }

    let mut maximal = true;
    for x in 0..n {
        maximal &= int(overlap_dim(b, &kt, x)?) > bound;
    }
    let mu = (frac(b.rank(), n) - nu) / (BigRational::one() - alpha);
    let params = ThetaParams { delta: delta.clone(), zeta: zeta.clone() };
    let (nu2, alpha2) = theta_unchecked(&params, &mu, nu, alpha);
    let keep = (BigRational::one() - delta) * &k_q;
    let assertions = ProbeAssertions {
        lemma_hypotheses: failures.is_empty(),
        hypothesis_failures: failures,
        mu_ge_delta: mu >= *delta,
        s_ge_1: !centers.is_empty(),
        overlap_bound,
        dim_identity: int(b.rank()) == &nu2 * &n_q,
        envelope_bound: int(envelope_dim(b, &linv_t)?) <= &alpha2 * &n_q,
        maximal,
        piece_dimension_bound: pieces.iter().all(|p| int(p.len()) >= keep),
    };
    Ok(LinearStep { centers, pieces, mu, assertions })
}

/// Run the linear construction over 𝔽_p[ℤᵈ] for K spanned by `basis`.
pub fn algebra_tiling_probe(
    group: Arc<dyn Group>,
    p: u32,
    basis: &[AlgebraElement],
    eps: &BigRational,
    chain: &QuotientChain,
    opts: &TilingOptions,
) -> Result<ProbeReport> {
    let g = group.as_ref();
    if free_abelian_dim(g).is_none() {
        return Err(Error::Contract(format!("the probe runs over F_p[Z^d]; {} is not Z^d", g.name())));
    }
    let fp = Fp::new(p)?;
    let k = unit_basis(fp, basis, g)?;
    let b = plan(g, &k, eps, opts)?;
    let mut tower: Vec<TowerLevel> = vec![b.base_level()];
    let mut level_from = 0;
    let mut last = None;
    for h in b.heights() {
        while tower.len() <= h {
            let next = b.next_level(&tower)?;
            tower.push(next);
        }
        let n = b.quotient_level(chain, &tower[..=h], level_from)?;
        level_from = n;
        let omega = chain.level(n)?;
        let size = omega.len();
        let mut a = Echelon::new(fp, size);
        let (mut nu, mut alpha) = (BigRational::zero(), BigRational::zero());
        let mut steps = Vec::new();
        let mut lifted: Vec<Element> = Vec::new();
        for i in (1..=h).rev() {
            if alpha >= BigRational::one() {
                break;
            }
            let step = linear_fill(
                &omega,
                &mut a,
                &tower[i].elements,
                &tower[i - 1].elements,
                &b.params.delta,
                &b.params.zeta,
                &nu,
                &alpha,
            )?;
            for (x, piece) in step.centers.iter().zip(&step.pieces) {
                let center = omega.lift(*x);
                lifted.extend(piece.iter().map(|&j| g.mul(&center, &tower[i].elements[j])));
            }
            steps.push(ProbeStep {
                level: i,
                nu: nu.clone(),
                alpha: alpha.clone(),
                mu: step.mu.clone(),
                s: step.centers.len(),
                assertions: step.assertions,
            });
            (nu, alpha) = theta_unchecked(&b.params, &step.mu, &nu, &alpha);
        }
        // complement Q: coordinate vectors on the non-pivot columns of A
        lifted.extend(a.free_columns().into_iter().map(|y| omega.lift(y)));
        let mut images = Echelon::new(fp, size);
        for t in &lifted {
            images.insert(fp.unit(size, omega.project(t)))?;
        }
        let projection_bijective = images.rank() == size && lifted.len() == size;
        let defect = set_defect(g, &lifted, &b.k)?;
        let done = nu > b.threshold;
        last = Some(ProbeReport {
            group: g.name().to_string(),
            p,
            basis: b.k.clone(),
            epsilon: eps.clone(),
            delta: b.params.delta.clone(),
            zeta: b.params.zeta.clone(),
            threshold: b.threshold.clone(),
            recipe_height: b.recipe_height,
            height: h,
            chain: chain.spec().clone(),
            quotient_level: n,
            quotient_dim: size,
            tower_dims: tower[..=h].iter().map(|t| t.elements.len()).collect(),
            steps,
            complement_dim: lifted.len(),
            projection_bijective,
            defect,
            nu0: nu,
        });
        if done {
            break;
        }
    }
    Ok(last.expect("at least one height is tried"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FreeAbelianGroup;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(x: i64) -> Element {
        Element::Ints(vec![x])
    }

    fn setup() -> (Arc<dyn Group>, QuotientChain) {
        let g: Arc<dyn Group> = Arc::new(FreeAbelianGroup::new(1, None));
        let c = QuotientChain::powers(g.clone(), 2).unwrap();
        (g, c)
    }

    #[test]
    fn two_point_basis_over_gf2() {
        let (g, chain) = setup();
        let basis = vec![vec![(z(0), 1)], vec![(z(1), 1)]];
        let r = algebra_tiling_probe(g.clone(), 2, &basis, &q(1, 2), &chain, &TilingOptions::default()).unwrap();
        assert!(!r.steps.is_empty());
        assert!(r.projection_bijective);
        let v = r.to_json(g.as_ref());
        assert_eq!(v["experimental"], json!(true));
        assert!(v["steps"][0]["assertions"]["mu_ge_delta"].is_boolean());
    }

    #[test]
    fn unit_span() {
        let (g, chain) = setup();
        let r = algebra_tiling_probe(g, 3, &[vec![(z(0), 2)]], &q(1, 2), &chain, &TilingOptions::default()).unwrap();
        assert_eq!(r.defect, q(0, 1));
        assert!(r.projection_bijective);
    }

    #[test]
    fn non_units_are_rejected() {
        let (g, chain) = setup();
        let basis = vec![vec![(z(0), 1)], vec![(z(0), 1), (z(1), 1)]];
        let r = algebra_tiling_probe(g.clone(), 2, &basis, &q(1, 2), &chain, &TilingOptions::default());
        assert!(matches!(r, Err(Error::Contract(_))));
        // a coefficient divisible by p is zero
        let r = algebra_tiling_probe(g, 2, &[vec![(z(0), 2)]], &q(1, 2), &chain, &TilingOptions::default());
        assert!(matches!(r, Err(Error::Contract(_))));
    }
}
