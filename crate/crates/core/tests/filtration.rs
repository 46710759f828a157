use std::sync::Arc;

use gradedgrowth::filtration::{
    aug_ladder, build_group_algebra, graded_dims_dual, magnus_deg, parse_free_word, witt_ranks, Degree, Letter,
};
use gradedgrowth::group::registry::{finite_builtin, finite_builtins, finite_p_groups};
use proptest::prelude::*;

fn ladders(p: u32) -> Vec<(&'static str, Vec<usize>, usize, usize)> {
    finite_builtins()
        .into_iter()
        .map(|name| {
            let g = Arc::new(finite_builtin(name, 1 << 12).unwrap());
            let order = g.len();
            let alg = build_group_algebra(g, p).unwrap();
            let l = aug_ladder(&alg).unwrap();
            (name, l.graded_dims, l.stable_dim, order)
        })
        .collect()
}

#[test]
fn graded_dims_are_submultiplicative() {
    for p in [2, 3, 5] {
        for (name, r, _, _) in ladders(p) {
            for m in 1..r.len() {
                for n in 1..r.len() - m {
                    assert!(r[m + n] <= r[m] * r[n], "{name} mod {p}: r_{} > r_{m} r_{n}", m + n);
                }
            }
        }
    }
}

#[test]
fn p_group_ladders_exhaust_the_algebra() {
    for p in [2, 3] {
        let pgroups = finite_p_groups(p);
        for (name, r, stable, order) in ladders(p) {
            assert_eq!(r.iter().sum::<usize>() + stable, order, "{name} mod {p}");
            // the augmentation ideal is nilpotent exactly for p-groups
            assert_eq!(stable == 0, pgroups.contains(&name), "{name} mod {p}");
            assert_eq!(r[0], 1);
        }
    }
}

#[test]
fn dual_method_matches_the_ladder() {
    for p in [2, 3] {
        for (name, r, _, _) in ladders(p) {
            let g = finite_builtin(name, 1 << 12).unwrap();
            let dual = graded_dims_dual(&g, p, r.len() + 1).unwrap();
            let mut expected = r.clone();
            expected.resize(r.len() + 2, 0);
            assert_eq!(dual, expected, "{name} mod {p}");
        }
    }
}

fn deg(word: &[Letter], p: u32) -> Degree {
    magnus_deg(word, 2, p, 10).unwrap()
}

fn letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0usize..2, any::<bool>()), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_ignores_free_reduction(w in letters(), at in any::<prop::sample::Index>(), s in (0usize..2, any::<bool>())) {
        let i = at.index(w.len() + 1);
        let mut padded = w.clone();
        padded.splice(i..i, [s, (s.0, !s.1)]);
        for p in [2, 3] {
            prop_assert_eq!(deg(&w, p), deg(&padded, p));
        }
    }

    #[test]
    fn degree_is_conjugation_invariant(w in letters(), c in letters()) {
        let inverse: Vec<Letter> = c.iter().rev().map(|&(i, inv)| (i, !inv)).collect();
        let conj: Vec<Letter> = c.iter().chain(&w).chain(&inverse).copied().collect();
        for p in [2, 3] {
            prop_assert_eq!(deg(&w, p), deg(&conj, p));
        }
    }
}

#[test]
fn known_degrees() {
    let w = |s: &str| parse_free_word(s, "xy").unwrap();
    for p in [2, 3, 5] {
        assert_eq!(deg(&w("x"), p), Degree::Finite(1));
        assert_eq!(deg(&w("[x,y]"), p), Degree::Finite(2));
        assert_eq!(deg(&w("[[x,y],x]"), p), Degree::Finite(3));
        // (1 + x)^p = 1 + x^p in characteristic p
        assert_eq!(deg(&w(&format!("x^{p}")), p), Degree::Finite(p as usize));
    }
    assert_eq!(deg(&w("x^4"), 2), Degree::Finite(4));
    assert_eq!(deg(&w("x^6"), 2), Degree::Finite(2));
    assert_eq!(deg(&w(""), 2), Degree::Above(10));
}

/// Lyndon words of length n over k letters: strictly smaller than every
/// proper rotation.
fn lyndon_count(k: u32, n: u32) -> u64 {
    let mut count = 0;
    for code in 0..k.pow(n) {
        let word: Vec<u32> = (0..n).map(|i| code / k.pow(i) % k).collect();
        if (1..n as usize).all(|r| {
            let rotated: Vec<u32> = word[r..].iter().chain(&word[..r]).copied().collect();
            word < rotated
        }) {
            count += 1;
        }
    }
    count
}

#[test]
fn necklace_formula_counts_lyndon_words() {
    for k in 1..=3u32 {
        let formula = witt_ranks(k as u64, 8);
        let brute: Vec<u64> = (1..=8).map(|n| lyndon_count(k, n)).collect();
        assert_eq!(formula, brute, "k = {k}");
    }
}
