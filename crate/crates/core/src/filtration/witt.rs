//! Ranks of the lower central quotients of free groups by the necklace
//! formula, with a brute-force count of aperiodic necklaces.

fn mobius(n: u64) -> i64 {
    let (mut n, mut sign, mut d) = (n, 1i64, 2u64);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// (1/n) Σ_{d|n} μ(d) k^{n/d} for n = 1..=n_max.
pub fn witt_ranks(k: u64, n_max: u32) -> Vec<u64> {
    (1..=n_max as u64)
        .map(|n| {
            let total: i128 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| mobius(d) as i128 * (k as i128).pow((n / d) as u32))
                .sum();
            (total / n as i128) as u64
        })
        .collect()
}

/// Number of aperiodic necklaces of length n over k letters, by listing
/// words that are strictly smaller than all their nontrivial rotations.
pub fn aperiodic_necklaces(k: u32, n: u32) -> u64 {
    let total = (k as u64).pow(n);
    let mut digits = vec![0u32; n as usize];
    let mut count = 0;
    for mut x in 0..total {
        for d in digits.iter_mut().rev() {
            *d = (x % k as u64) as u32;
            x /= k as u64;
        }
        let minimal = (1..n as usize).all(|r| {
            let rotated = digits[r..].iter().chain(&digits[..r]);
            digits.iter().lt(rotated)
        });
        if minimal {
            count += 1;
        }
    }
    count
}
