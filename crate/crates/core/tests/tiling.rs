use std::collections::BTreeSet;
use std::sync::Arc;

use gradedgrowth::group::registry::builtin;
use gradedgrowth::group::{ball, Element, FreeAbelianGroup, Group};
use gradedgrowth::tiling::{
    build_transversal, greedy_fill, inverse_envelope, theta, verify_tiling_certificate, ChainSpec, CosetTable,
    QuotientChain, ThetaParams, TilingOptions,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn plane() -> Arc<dyn Group> {
    Arc::new(FreeAbelianGroup::new(2, None))
}

fn subset(pool: &[Element], mask: u64) -> Vec<Element> {
    pool.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, x)| x.clone()).collect()
}

fn as_set(v: Vec<Element>) -> BTreeSet<Element> {
    v.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn envelope_distributes_over_unions(ma in any::<u64>(), mb in any::<u64>(), mk in any::<u64>(), ml in any::<u64>()) {
        let g = builtin("lamplighter").unwrap();
        let b = ball(g.as_ref(), 3).unwrap();
        let pool: Vec<Element> = b.elements().iter().take(40).cloned().collect();
        let small: Vec<Element> = b.elements().iter().take(9).cloned().collect();
        let (a, bb) = (subset(&pool, ma), subset(&pool, mb));
        let (k, l) = (subset(&small, mk), subset(&small, ml));
        let env = |x: &[Element], y: &[Element]| as_set(inverse_envelope(g.as_ref(), x, y));

        let ab: Vec<Element> = as_set(a.iter().chain(&bb).cloned().collect()).into_iter().collect();
        let joined: BTreeSet<Element> = env(&a, &k).union(&env(&bb, &k)).cloned().collect();
        prop_assert_eq!(env(&ab, &k), joined);

        let kl: Vec<Element> = as_set(k.iter().chain(&l).cloned().collect()).into_iter().collect();
        let joined: BTreeSet<Element> = env(&a, &k).union(&env(&a, &l)).cloned().collect();
        prop_assert_eq!(env(&a, &kl), joined);

        // membership, from the definition {x : xK ∩ A ≠ ∅}
        let aset = as_set(a.clone());
        let direct: BTreeSet<Element> = b
            .elements()
            .iter()
            .filter(|x| k.iter().any(|y| aset.contains(&g.mul(x, y))))
            .cloned()
            .collect();
        let within: BTreeSet<Element> = env(&a, &k).into_iter().filter(|x| b.length(x).is_some()).collect();
        prop_assert!(direct.is_subset(&within));
    }
}

#[test]
fn theta_is_monotone_in_mu() {
    let grid: Vec<BigRational> = (0..=10).map(|i| q(i, 10)).collect();
    for delta in [q(1, 20), q(1, 5), q(1, 2)] {
        for zeta in [q(1, 1), q(11, 10), q(3, 2)] {
            let p = ThetaParams::new(delta.clone(), zeta.clone()).unwrap();
            assert!(theta(&p, &(&delta / q(2, 1)), &q(0, 1), &q(0, 1)).is_err());
            for nu in &grid {
                for alpha in grid.iter().filter(|a| **a < BigRational::one()) {
                    let mus: Vec<&BigRational> = grid.iter().filter(|m| **m >= delta).collect();
                    let mut last: Option<(BigRational, BigRational)> = None;
                    for mu in mus {
                        let (n2, a2) = theta(&p, mu, nu, alpha).unwrap();
                        // closed form recomputed here
                        let gain = mu * (BigRational::one() - alpha);
                        assert_eq!(n2, nu + &gain);
                        assert_eq!(a2, alpha + &gain * &zeta / (BigRational::one() - &delta));
                        assert!(n2 >= *nu && a2 >= *alpha);
                        if let Some((pn, pa)) = &last {
                            assert!(n2 >= *pn && a2 >= *pa);
                        }
                        last = Some((n2, a2));
                    }
                }
            }
        }
    }
}

#[test]
fn greedy_covering_on_random_inputs() {
    let g = plane();
    let chain = QuotientChain::powers(g.clone(), 2).unwrap();
    let omega = chain.level(3).unwrap();
    let n = omega.len();
    let k: Vec<Element> = ball(g.as_ref(), 1).unwrap().elements().to_vec();
    let l = k.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut runs = 0;
    while runs < 40 {
        let density = rng.gen_range(0.0..0.3);
        let b: Vec<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
        let delta = q(rng.gen_range(1..5), 10);
        let Ok(out) = greedy_fill(&omega, &b, &k, &l, &delta) else { continue };
        runs += 1;
        assert!(out.centers.len() <= n);
        assert!(out.checks.overlap_bound && out.checks.count_identity && out.checks.maximal);
        assert!(b.iter().all(|&x| out.covered[x]), "B is kept");
        assert_eq!(out.covered.iter().filter(|&&c| c).count(), out.covered_count);
        // maximality recounted: every translate meets B_s in more than δ#K points
        let table = omega.action_table(&k);
        for x in 0..n {
            let hit = table.iter().filter(|row| out.covered[row[x]]).count();
            assert!(q(hit as i64, 1) > &delta * q(k.len() as i64, 1), "coset {x} could still take a tile");
        }
        // newly covered points are fresh, and together with B make up B_s
        let mut seen: Vec<bool> = (0..n).map(|x| b.contains(&x)).collect();
        for (&c, fresh) in out.centers.iter().zip(&out.new_points) {
            for &i in fresh {
                let y = table[i][c];
                assert!(!std::mem::replace(&mut seen[y], true), "coset {y} covered twice");
            }
        }
        assert_eq!(seen, out.covered);
        assert!(out.nu >= BigRational::zero() && out.nu_next <= BigRational::one());
    }
}

fn recheck(g: Arc<dyn Group>, k: &[Element], eps: BigRational, chain: &QuotientChain, box_base: u64) {
    let opts = TilingOptions { box_base, ..Default::default() };
    let cert = build_transversal(g.clone(), k, &eps, chain, &opts).unwrap();
    assert!(cert.defect < eps, "defect {} ≥ {}", cert.defect, eps);
    let v = cert.to_json(g.as_ref());
    let check = verify_tiling_certificate(g, &v).unwrap();
    assert!(check.ok(), "{:?}", check.failures);
}

#[test]
fn certificates_verify_from_json() {
    let z: Arc<dyn Group> = builtin("z").unwrap();
    let k = ball(z.as_ref(), 1).unwrap().elements().to_vec();
    recheck(z.clone(), &k, q(1, 3), &QuotientChain::powers(z.clone(), 2).unwrap(), 2);

    let g = plane();
    let k = ball(g.as_ref(), 1).unwrap().elements().to_vec();
    recheck(g.clone(), &k, q(1, 2), &QuotientChain::powers(g.clone(), 3).unwrap(), 3);
}

/// ℤ → ℤ/2ⁿ written out as coset tables.
fn cyclic_tables(g: &dyn Group, levels: u32) -> ChainSpec {
    let gens: Vec<Element> = (0..g.generators().len()).map(|s| g.normalize(&[s])).collect();
    let levels = (1..=levels)
        .map(|n| {
            let m = 1i64 << n;
            let lifts: Vec<Element> = (0..m).map(|i| Element::Ints(vec![i])).collect();
            let actions = gens
                .iter()
                .map(|s| lifts.iter().map(|x| g.mul(x, s).ints()[0].rem_euclid(m) as usize).collect())
                .collect();
            CosetTable { lifts: lifts.iter().map(|x| g.format(x)).collect(), actions }
        })
        .collect();
    ChainSpec::Tables { levels }
}

#[test]
fn coset_table_chains_give_the_same_tiling() {
    let z: Arc<dyn Group> = builtin("z").unwrap();
    let k = ball(z.as_ref(), 1).unwrap().elements().to_vec();
    let tables = QuotientChain::from_spec(z.clone(), cyclic_tables(z.as_ref(), 10)).unwrap();
    recheck(z.clone(), &k, q(1, 3), &tables, 2);

    let opts = TilingOptions::default();
    let a = build_transversal(z.clone(), &k, &q(1, 3), &tables, &opts).unwrap();
    let b = build_transversal(z.clone(), &k, &q(1, 3), &QuotientChain::powers(z.clone(), 2).unwrap(), &opts).unwrap();
    assert_eq!((a.quotient_order, a.transversal.len()), (b.quotient_order, b.transversal.len()));
    assert_eq!(a.defect, b.defect);
}
