use gradedgrowth::group::registry::builtin;
use gradedgrowth::group::{ball, is_dead_end, triangle_dead_end_family, Group};
use gradedgrowth::rewriting::{triangle_presentation, RewritingGroup};
use proptest::prelude::*;

const GROUPS: &[&str] = &[
    "z", "z2", "z3", "f2", "f3", "heisenberg", "lamplighter", "c2", "c3", "c4", "c8", "c9", "c2xc2", "c3xc3", "d3",
    "d4", "q8", "heis-mod3", "heis-mod4", "t334", "t335",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplying_normal_forms_matches_concatenation(
        gi in 0..GROUPS.len(),
        u in prop::collection::vec(any::<usize>(), 0..=12),
        v in prop::collection::vec(any::<usize>(), 0..=12),
    ) {
        let g = builtin(GROUPS[gi]).unwrap();
        let n = g.generators().len();
        let u: Vec<usize> = u.into_iter().map(|s| s % n).collect();
        let v: Vec<usize> = v.into_iter().map(|s| s % n).collect();
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(g.mul(&g.normalize(&u), &g.normalize(&v)), g.normalize(&uv), "{}", GROUPS[gi]);
        let x = g.normalize(&u);
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        prop_assert_eq!(g.normalize(&g.word_of(&x)), x);
    }
}

#[test]
fn balls_are_monotone_and_symmetric() {
    for name in GROUPS {
        let g = builtin(name).unwrap();
        let big = ball(g.as_ref(), 5).unwrap();
        let small = ball(g.as_ref(), 4).unwrap();
        for x in small.elements() {
            assert_eq!(small.length(x), big.length(x), "{name}");
        }
        assert_eq!(big.elements().iter().filter(|x| big.length(x).unwrap() <= 4).count(), small.len(), "{name}");
        for x in big.elements() {
            assert_eq!(big.length(&g.inverse(x)), big.length(x), "{name}: length of the inverse");
        }
    }
}

/// T(3,3,4) is completed over an auxiliary letter z = xy, so shortlex
/// normal forms are geodesics for the full alphabet, not for {x, y}.
#[test]
fn normal_forms_are_geodesics_in_t334() {
    let mut pres = triangle_presentation(4);
    pres.metric_generators = None;
    let full = RewritingGroup::from_presentation("t334-full", &pres).unwrap();
    let b = ball(&full, 8).unwrap();
    for x in b.elements() {
        assert_eq!(full.word_of(x).len(), b.length(x).unwrap(), "{}", full.format(x));
    }
    let g = builtin("t334").unwrap();
    let b = ball(g.as_ref(), 8).unwrap();
    for x in b.elements() {
        let w = g.word_of(x);
        assert_eq!(&g.normalize(&w), x);
        assert!(w.len() >= b.length(x).unwrap());
    }
}

#[test]
fn triangle_family_is_dead_ends() {
    for k in [4u32, 5] {
        let g = builtin(&format!("t33{k}")).unwrap();
        for n in [-2i64, -1, 1, 2] {
            let w = triangle_dead_end_family(k, n).unwrap();
            let x = g.parse(&w).unwrap();
            let b = ball(g.as_ref(), g.word_of(&x).len() + 1).unwrap();
            assert!(is_dead_end(g.as_ref(), &b, &x).unwrap(), "k={k}, n={n}");
        }
    }
}
