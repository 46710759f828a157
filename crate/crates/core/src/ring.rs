//! Coefficient rings: prime fields, integers and rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact commutative coefficient ring.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Multiplicative inverse, if any.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `a^e` with the convention `0^0 = 1`.
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// GF(p) for a prime p < 2¹⁶.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 16 || !is_prime(p as u64) {
            return Err(Error::Contract(format!("{p} is not a prime below 2^16")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce(n)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(a, (self.p - 2) as u64))
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let n: i64 = s.trim().parse().map_err(|e| Error::Parse(format!("bad scalar {s:?}: {e}")))?;
        Ok(self.reduce(n))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim().parse().map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// Parse `a`, `a/b` or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = |e: String| Error::Parse(format!("bad rational {s:?}: {e}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|e| bad(format!("{e}")))?;
        let d: BigInt = d.trim().parse().map_err(|e| bad(format!("{e}")))?;
        if d.is_zero() {
            return Err(bad("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|e| bad(format!("{e}")))?;
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    Ok(BigRational::from_integer(t.parse().map_err(|e| bad(format!("{e}")))?))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
