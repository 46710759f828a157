//! Growth summaries of graded-dimension sequences.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub dims: Vec<u64>,
    /// (n, r_n^{1/n}) for n ≥ 1 in the positive prefix.
    pub roots: Vec<(usize, f64)>,
    /// min over n of r_n^{1/n}, an upper estimate of lim r_n^{1/n}.
    pub fekete_estimate: Option<f64>,
    pub fekete_argmin: Option<usize>,
    /// Whether r_n^{1/n} never increases along the computed range.
    pub roots_nonincreasing: bool,
    /// Least-squares slope of log r_n against log n.
    pub polynomial_degree_fit: Option<f64>,
    /// Pairs (m, n) with r_m r_n < r_{m+n}.
    pub submultiplicativity_violations: Vec<(usize, usize)>,
}

pub fn growth_report(dims: &[u64]) -> GrowthReport {
    let positive: Vec<u64> = dims.iter().copied().take_while(|&r| r > 0).collect();
    let roots: Vec<(usize, f64)> =
        positive.iter().enumerate().skip(1).map(|(n, &r)| (n, (r as f64).powf(1.0 / n as f64))).collect();
    let (fekete_argmin, fekete_estimate) = match roots
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
    {
        Some((n, v)) => (Some(n), Some(v)),
        None => (None, None),
    };
    let roots_nonincreasing = roots.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    let pts: Vec<(f64, f64)> = roots.iter().map(|&(n, _)| ((n as f64).ln(), (positive[n] as f64).ln())).collect();
    let polynomial_degree_fit = (pts.len() >= 2).then(|| {
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let cov: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let var: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        cov / var
    });
    let mut violations = Vec::new();
    for m in 1..positive.len() {
        for n in m..positive.len() {
            if m + n < positive.len() && (positive[m] as u128) * (positive[n] as u128) < positive[m + n] as u128 {
                violations.push((m, n));
            }
        }
    }
    GrowthReport {
        dims: dims.to_vec(),
        roots,
        fekete_estimate,
        fekete_argmin,
        roots_nonincreasing,
        polynomial_degree_fit,
        submultiplicativity_violations: violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_and_constant() {
        let r = growth_report(&[1, 2, 4, 8, 16]);
        assert!((r.fekete_estimate.unwrap() - 2.0).abs() < 1e-12);
        assert!(r.submultiplicativity_violations.is_empty());
        let r = growth_report(&[1, 1, 1, 1]);
        assert_eq!(r.fekete_estimate, Some(1.0));
        assert_eq!(r.polynomial_degree_fit, Some(0.0));
    }

    #[test]
    fn quadratic_growth_fits_degree_near_two() {
        let dims: Vec<u64> = (0..40).map(|n| (n * n + 1) as u64).collect();
        let r = growth_report(&dims);
        assert!((r.polynomial_degree_fit.unwrap() - 2.0).abs() < 0.2);
        assert!(!r.roots_nonincreasing);
    }

    #[test]
    fn violations_are_reported() {
        let r = growth_report(&[1, 1, 5]);
        assert_eq!(r.submultiplicativity_violations, vec![(1, 1)]);
        assert!(growth_report(&[]).fekete_estimate.is_none());
    }
}
