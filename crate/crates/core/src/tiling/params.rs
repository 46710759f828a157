//! The overlap δ, the relative Følner constant ζ, the map Θ_μ and the
//! tower height they imply.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaParams {
    pub delta: BigRational,
    pub zeta: BigRational,
}

impl ThetaParams {
    pub fn new(delta: BigRational, zeta: BigRational) -> Result<Self> {
        if !delta.is_positive() || delta >= BigRational::one() {
            return Err(Error::Contract(format!("delta = {delta} is not in (0, 1)")));
        }
        if zeta < BigRational::one() {
            return Err(Error::Contract(format!("zeta = {zeta} is below 1")));
        }
        Ok(ThetaParams { delta, zeta })
    }
}

pub(crate) fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn frac(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Θ_μ without the μ ≥ δ check, for recording what happened when the
/// lemma's guarantee failed.
pub(crate) fn theta_unchecked(
    p: &ThetaParams,
    mu: &BigRational,
    nu: &BigRational,
    alpha: &BigRational,
) -> (BigRational, BigRational) {
    let gain = mu * (BigRational::one() - alpha);
    let nu2 = nu + &gain;
    let alpha2 = alpha + gain * &p.zeta / (BigRational::one() - &p.delta);
    (nu2, alpha2)
}

/// Θ_μ(ν, α) = (ν + μ(1−α), α + μ(1−α)ζ/(1−δ)).
pub fn theta(
    p: &ThetaParams,
    mu: &BigRational,
    nu: &BigRational,
    alpha: &BigRational,
) -> Result<(BigRational, BigRational)> {
    if *mu < p.delta {
        return Err(Error::Contract(format!("mu = {mu} is below delta = {}", p.delta)));
    }
    Ok(theta_unchecked(p, mu, nu, alpha))
}

fn check_eps(eps: &BigRational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::Contract(format!("epsilon = {eps} must be positive")));
    }
    Ok(())
}

/// Whether δ meets δ·#K < ε/2 and (1+ε/2)(1−δ) > 1.
pub fn delta_ok(delta: &BigRational, k_size: usize, eps: &BigRational) -> bool {
    let half = eps / int(2);
    delta.is_positive()
        && *delta < BigRational::one()
        && delta * int(k_size) < half
        && (BigRational::one() + &half) * (BigRational::one() - delta) > BigRational::one()
}

/// Whether ζ meets ζ > 1 and (1−δ)/ζ > 1 − ε/(2#K).
pub fn zeta_ok(zeta: &BigRational, delta: &BigRational, k_size: usize, eps: &BigRational) -> bool {
    *zeta > BigRational::one() && (BigRational::one() - delta) / zeta > threshold(k_size, eps)
}

/// 1 − ε/(2#K), the covered fraction the construction must exceed.
pub fn threshold(k_size: usize, eps: &BigRational) -> BigRational {
    BigRational::one() - eps / int(2 * k_size)
}

/// The largest 1/2ᵏ meeting the overlap conditions.
pub fn choose_delta(k_size: usize, eps: &BigRational) -> Result<BigRational> {
    check_eps(eps)?;
    (1..=128u32)
        .map(|k| BigRational::new(BigInt::one(), BigInt::one() << k))
        .find(|d| delta_ok(d, k_size, eps))
        .ok_or_else(|| Error::Contract(format!("no delta of the form 1/2^k works for epsilon = {eps}")))
}

/// ζ = 1 + 1/2ᵏ for the least k meeting the Følner-constant condition,
/// i.e. the loosest such constant.
pub fn choose_zeta(k_size: usize, eps: &BigRational, delta: &BigRational) -> Result<BigRational> {
    check_eps(eps)?;
    (0..=128u32)
        .map(|k| BigRational::one() + BigRational::new(BigInt::one(), BigInt::one() << k))
        .find(|z| zeta_ok(z, delta, k_size, eps))
        .ok_or_else(|| Error::Contract(format!("no zeta of the form 1+1/2^k works for delta = {delta}")))
}

/// Least t with ν̄_t > threshold, where (ν̄_t, ᾱ_t) = Θ_δᵗ(0, 0).
pub fn recipe_height(p: &ThetaParams, threshold: &BigRational, cap: usize) -> Result<usize> {
    let (mut nu, mut alpha) = (BigRational::zero(), BigRational::zero());
    for t in 0..=cap {
        if nu > *threshold {
            return Ok(t);
        }
        if alpha >= BigRational::one() {
            break;
        }
        (nu, alpha) = theta_unchecked(p, &p.delta, &nu, &alpha);
    }
    Err(Error::Resource(format!("tower height exceeds {cap} for delta = {}, zeta = {}", p.delta, p.zeta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn theta_values() {
        let p = ThetaParams::new(q(1, 10), q(6, 5)).unwrap();
        assert_eq!(theta(&p, &q(1, 10), &q(0, 1), &q(0, 1)).unwrap(), (q(1, 10), q(2, 15)));
        assert_eq!(theta(&p, &q(1, 2), &q(1, 3), &q(1, 1)).unwrap(), (q(1, 3), q(1, 1)));
        assert!(matches!(theta(&p, &q(1, 20), &q(0, 1), &q(0, 1)), Err(Error::Contract(_))));
    }

    #[test]
    fn theta_ratio_is_fixed() {
        let p = ThetaParams::new(q(1, 8), q(9, 8)).unwrap();
        let (mut nu, mut alpha) = (q(0, 1), q(0, 1));
        for _ in 0..12 {
            (nu, alpha) = theta(&p, &p.delta, &nu, &alpha).unwrap();
            assert_eq!(&nu / &alpha, (BigRational::one() - &p.delta) / &p.zeta);
        }
    }

    #[test]
    fn theta_is_monotone_in_mu() {
        let p = ThetaParams::new(q(1, 10), q(5, 4)).unwrap();
        for (nu, alpha) in [(q(0, 1), q(0, 1)), (q(1, 3), q(1, 2)), (q(1, 2), q(1, 1))] {
            let mut prev: Option<(BigRational, BigRational)> = None;
            for i in 0..=20 {
                let mu = q(1, 10) + q(i, 20);
                let cur = theta(&p, &mu, &nu, &alpha).unwrap();
                if let Some(pr) = &prev {
                    assert!(cur.0 >= pr.0 && cur.1 >= pr.1);
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn recipe_choices() {
        let eps = q(1, 2);
        assert_eq!(choose_delta(5, &eps).unwrap(), q(1, 32));
        assert_eq!(choose_zeta(5, &eps, &q(1, 32)).unwrap(), q(65, 64));
        assert_eq!(choose_delta(3, &eps).unwrap(), q(1, 16));
        assert_eq!(choose_zeta(3, &eps, &q(1, 16)).unwrap(), q(65, 64));
        let p = ThetaParams::new(q(1, 16), q(65, 64)).unwrap();
        let t = recipe_height(&p, &threshold(3, &eps), 10_000).unwrap();
        assert!(t > 10);
        assert!(choose_delta(3, &q(0, 1)).is_err());
    }
}
