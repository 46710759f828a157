use gradedgrowth::group::registry::builtin;
use gradedgrowth::group::{ball, Element};
use gradedgrowth::hecke::HeckeAlgebra;
use gradedgrowth::linalg::{Echelon, Fp, FpVec};
use gradedgrowth::ring::{Integers, Rationals, Ring};
use gradedgrowth::subspace::{Ambient, Subspace};
use proptest::prelude::*;

const GROUPS: &[&str] = &["z", "z2", "f2", "heisenberg", "lamplighter", "c4", "d4", "q8", "heis-mod3", "t334"];

/// Basis triples with ℓ(g)+ℓ(h)+ℓ(k) ≤ radius, so every product stays in the ball.
fn check_basis_associativity<R: Ring>(name: &str, ring: R, lambda: R::Elem) {
    let g = builtin(name).unwrap();
    let b = ball(g.as_ref(), 4).unwrap();
    let alg = HeckeAlgebra::new(g.as_ref(), &b, ring, lambda);
    let short: Vec<&Element> = b.elements().iter().filter(|x| b.length(x).unwrap() <= 2).collect();
    let tiny: Vec<&Element> = short.iter().copied().filter(|x| b.length(x).unwrap() <= 1).collect();
    for x in &short {
        for y in &tiny {
            for z in &tiny {
                let (dx, dy, dz) = (alg.delta(x).unwrap(), alg.delta(y).unwrap(), alg.delta(z).unwrap());
                let left = alg.mul(&alg.mul(&dx, &dy).unwrap(), &dz).unwrap();
                let right = alg.mul(&dx, &alg.mul(&dy, &dz).unwrap()).unwrap();
                assert_eq!(left, right, "{name}: ({x:?}, {y:?}, {z:?})");
                let middle = alg.mul(&alg.mul(&dy, &dx).unwrap(), &dz).unwrap();
                let middle2 = alg.mul(&dy, &alg.mul(&dx, &dz).unwrap()).unwrap();
                assert_eq!(middle, middle2, "{name}: ({y:?}, {x:?}, {z:?})");
            }
        }
    }
}

#[test]
fn basis_products_associate() {
    for name in GROUPS {
        check_basis_associativity(name, Integers, Integers.from_i64(0));
        check_basis_associativity(name, Integers, Integers.from_i64(1));
        check_basis_associativity(name, Integers, Integers.from_i64(3));
        check_basis_associativity(name, Rationals, Rationals.parse("2/7").unwrap());
    }
}

#[test]
fn identity_is_a_two_sided_unit() {
    for name in GROUPS {
        let g = builtin(name).unwrap();
        let b = ball(g.as_ref(), 3).unwrap();
        for lambda in [0, 1, 5] {
            let alg = HeckeAlgebra::new(g.as_ref(), &b, Integers, Integers.from_i64(lambda));
            let one = alg.delta(&g.identity()).unwrap();
            for x in b.elements() {
                let dx = alg.term(x.clone(), Integers.from_i64(7));
                assert_eq!(alg.mul(&one, &dx).unwrap(), dx, "{name}");
                assert_eq!(alg.mul(&dx, &one).unwrap(), dx, "{name}");
            }
        }
    }
}

#[test]
fn crystal_products_respect_length() {
    for name in GROUPS {
        let g = builtin(name).unwrap();
        let b = ball(g.as_ref(), 4).unwrap();
        let alg = HeckeAlgebra::new(g.as_ref(), &b, Integers, Integers.zero());
        let short: Vec<&Element> = b.elements().iter().filter(|x| b.length(x).unwrap() <= 2).collect();
        for x in &short {
            for y in &short {
                let p = alg.delta_mul(x, y).unwrap();
                let xy = g.mul(x, y);
                let additive = b.length(&xy).unwrap() == b.length(x).unwrap() + b.length(y).unwrap();
                if additive {
                    assert_eq!(p, alg.delta(&xy).unwrap(), "{name}");
                } else {
                    assert!(p.is_zero(), "{name}: {x:?}·{y:?} should vanish");
                }
            }
        }
    }
}

#[test]
fn undeformed_product_is_the_group_ring() {
    // λ = 1 multiplies basis elements exactly as the group does
    let g = builtin("lamplighter").unwrap();
    let b = ball(g.as_ref(), 4).unwrap();
    let alg = HeckeAlgebra::new(g.as_ref(), &b, Integers, Integers.one());
    let short: Vec<&Element> = b.elements().iter().filter(|x| b.length(x).unwrap() <= 2).collect();
    for x in &short {
        for y in &short {
            assert_eq!(alg.delta_mul(x, y).unwrap(), alg.delta(&g.mul(x, y)).unwrap());
        }
    }
}

fn vectors(fp: Fp, n: usize, raw: &[Vec<u32>]) -> Vec<FpVec> {
    raw.iter().map(|r| fp.from_entries(&r.iter().take(n).map(|&x| x % fp.p()).collect::<Vec<_>>())).collect()
}

fn raw_rows() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(any::<u32>(), 6), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_echelon_form_is_canonical(
        p in prop::sample::select(vec![2u32, 3, 5, 7]),
        raw in raw_rows(),
        scales in prop::collection::vec(1u32..1000, 6),
        seed in any::<u64>(),
    ) {
        let fp = Fp::new(p).unwrap();
        let rows = vectors(fp, 6, &raw);
        let a = Echelon::from_rows(fp, 6, rows.clone()).unwrap();
        // rescale by units and reorder
        let mut other: Vec<FpVec> = rows
            .iter()
            .zip(&scales)
            .map(|(r, &s)| {
                let mut r = r.clone();
                let s = s % p;
                fp.scale(&mut r, if s == 0 { 1 } else { s });
                r
            })
            .collect();
        let k = other.len().max(1);
        other.rotate_left((seed as usize) % k);
        if other.len() > 1 {
            let extra = {
                let mut s = other[0].clone();
                fp.axpy(&mut s, 1, &other[1]);
                s
            };
            other.push(extra);
        }
        let b = Echelon::from_rows(fp, 6, other).unwrap();
        prop_assert_eq!(a.rows(), b.rows());
        prop_assert_eq!(a.pivots(), b.pivots());
    }

    #[test]
    fn dimension_formula_for_sum_and_intersection(
        p in prop::sample::select(vec![2u32, 3, 5]),
        ra in raw_rows(),
        rb in raw_rows(),
    ) {
        let fp = Fp::new(p).unwrap();
        let z = builtin("z").unwrap();
        let mut elements = ball(z.as_ref(), 3).unwrap().elements().to_vec();
        elements.truncate(6);
        let ambient = Ambient::new(elements).unwrap();
        let n = ambient.len();
        let a = Subspace::span(&ambient, fp, vectors(fp, n, &ra)).unwrap();
        let b = Subspace::span(&ambient, fp, vectors(fp, n, &rb)).unwrap();
        let sum = a.sum(&b).unwrap();
        let cap = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.rank() + cap.rank(), a.rank() + b.rank());
        prop_assert!(sum.contains_subspace(&a) && sum.contains_subspace(&b));
        prop_assert!(a.contains_subspace(&cap) && b.contains_subspace(&cap));
        prop_assert_eq!(a.perp().rank() + a.rank(), n);
    }
}
