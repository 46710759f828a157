//! Jennings dimension subgroups of a finite p-group, and the Hilbert
//! series they predict for gr 𝔽_pG.
//!
//! The recursion used is G_{n+1} = [G_n, G]·(G_{⌈(n+1)/p⌉})^p. Reading the
//! power term as G_{⌈n/p⌉} instead gives G_3 = ⟨g²⟩ for C₄, whose Hilbert
//! series (1+t)(1+t³) disagrees with the augmentation ladder.
//! Consecutive terms may coincide (C₉ has d = [1, 0, 1]).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};

#[derive(Debug, Clone)]
pub struct JenningsSeries {
    /// G_1 = G, G_2, … down to the trivial group, as sorted index lists.
    pub subgroups: Vec<Vec<usize>>,
    /// d_n = log_p [G_n : G_{n+1}].
    pub dims: Vec<u32>,
}

/// Subgroup generated by `gens` (finite, so monoid closure suffices).
pub fn subgroup_closure(group: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut member = vec![false; group.len()];
    member[0] = true;
    let mut out = vec![0];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = group.mul_idx(x, g);
            if !member[y] {
                member[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact p-adic logarithm of `n`, if `n` is a power of `p`.
pub fn log_p(n: usize, p: u32) -> Option<u32> {
    let (mut n, p) = (n, p as usize);
    let mut e = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

pub fn jennings_series(group: &FiniteGroup, p: u32) -> Result<JenningsSeries> {
    if log_p(group.len(), p).is_none() {
        return Err(Error::Contract(format!("group {} has order {}, not a power of {p}", group.name(), group.len())));
    }
    let all: Vec<usize> = (0..group.len()).collect();
    let mut subgroups = vec![all.clone()];
    while subgroups.last().unwrap().len() > 1 {
        let n = subgroups.len(); // computing G_{n+1}
        let gn = &subgroups[n - 1];
        let mut gens = Vec::new();
        for &x in gn {
            for &g in &all {
                gens.push(group.commutator_idx(x, g));
            }
        }
        let k = (n + 1).div_ceil(p as usize);
        for &x in &subgroups[k - 1] {
            gens.push(group.pow_idx(x, p as u64));
        }
        let next = subgroup_closure(group, &gens);
        if subgroups.len() > 2 * group.len() {
            return Err(Error::Contract(format!("Jennings series of {} does not reach 1", group.name())));
        }
        subgroups.push(next);
    }
    let dims = subgroups
        .windows(2)
        .map(|w| log_p(w[0].len() / w[1].len(), p).expect("index of a p-group subgroup is a p-power"))
        .collect();
    Ok(JenningsSeries { subgroups, dims })
}

/// Coefficients of ∏_n ((1 − t^{pn})/(1 − t^n))^{d_n} through `max_deg`
/// (or the full polynomial if it is shorter).
pub fn jennings_hilbert_coeffs(dims: &[u32], p: u32, max_deg: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for (i, &d) in dims.iter().enumerate() {
        let n = i + 1;
        for _ in 0..d {
            // multiply by 1 + t^n + … + t^{(p−1)n}
            let mut next = vec![0u64; poly.len() + (p as usize - 1) * n];
            for (a, &c) in poly.iter().enumerate() {
                for j in 0..p as usize {
                    next[a + j * n] += c;
                }
            }
            poly = next;
        }
    }
    poly.truncate(max_deg + 1);
    poly
}
