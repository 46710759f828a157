//! Golod–Shafarevich checks: is 1 − dt + Σ_r t^{deg r} negative for some
//! t ∈ (0, 1)? All evaluation is exact; a positive answer carries the
//! witness t and the value there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::filtration::{magnus_deg, parse_free_word, Degree};
use crate::report::{big_json, fraction_from_json, fraction_json, json_big};

#[derive(Clone, Debug, PartialEq)]
pub struct GsPresentation {
    pub d: u32,
    pub degrees: Vec<Degree>,
    pub p: Option<u32>,
    /// User-asserted bound on the contribution of relators not listed,
    /// added to every value and echoed in certificates.
    pub tail_bound: Option<BigRational>,
}

impl GsPresentation {
    pub fn new(d: u32, degrees: &[usize]) -> Self {
        GsPresentation { d, degrees: degrees.iter().map(|&n| Degree::Finite(n)).collect(), p: None, tail_bound: None }
    }

    /// Replace each "greater than D" degree by D + 1. A larger true degree
    /// only lowers the value, so witnesses stay valid.
    pub fn assume_min_degree(&self) -> Self {
        let mut out = self.clone();
        for d in out.degrees.iter_mut() {
            if let Degree::Above(n) = *d {
                *d = Degree::Finite(n + 1);
            }
        }
        out
    }

    fn finite_degrees(&self) -> Result<Vec<usize>> {
        if self.d == 0 {
            return Err(Error::Contract("generator count must be at least 1".into()));
        }
        self.degrees
            .iter()
            .map(|d| match *d {
                Degree::Finite(0) => Err(Error::Contract("relator degrees must be at least 1".into())),
                Degree::Finite(n) => Ok(n),
                Degree::Above(n) => Err(Error::Contract(format!(
                    "relator degree only known to exceed {n}; rerun with a larger bound or assume the minimum"
                ))),
            })
            .collect()
    }
}

/// 1 − dt + Σ t^deg (+ tail bound).
pub fn gs_value(pres: &GsPresentation, t: &BigRational) -> Result<BigRational> {
    let degrees = pres.finite_degrees()?;
    eval(pres, &degrees, t)
}

fn eval(pres: &GsPresentation, degrees: &[usize], t: &BigRational) -> Result<BigRational> {
    if !t.is_positive() || *t >= BigRational::one() {
        return Err(Error::OutOfRange(format!("t = {t} is not in (0, 1)")));
    }
    let mut v = BigRational::one() - BigRational::from_integer(pres.d.into()) * t;
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut pow = BigRational::one();
    let mut counts = vec![0u32; max + 1];
    for &n in degrees {
        counts[n] += 1;
    }
    for c in counts.iter().skip(1) {
        pow *= t;
        if *c > 0 {
            v += &pow * BigRational::from_integer((*c).into());
        }
    }
    if let Some(b) = &pres.tail_bound {
        v += b;
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GsCertificate {
    pub is_gs: bool,
    /// The witness when `is_gs`, otherwise the best grid point.
    pub t: BigRational,
    pub value: BigRational,
    pub degrees: Vec<Degree>,
    pub grid: u32,
    pub tail_bound: Option<BigRational>,
}

/// Evaluate on {i/grid}, then refine twice by halving the step around the
/// running minimum. Ties keep the smaller t.
pub fn gs_certificate(pres: &GsPresentation, grid: u32) -> Result<GsCertificate> {
    if grid < 100 {
        return Err(Error::Contract(format!("grid {grid} is below the minimum of 100")));
    }
    let degrees = pres.finite_degrees()?;
    let frac = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let mut best: Option<(BigRational, BigRational)> = None;
    let consider = |t: BigRational, best: &mut Option<(BigRational, BigRational)>| -> Result<()> {
        if !t.is_positive() || t >= BigRational::one() {
            return Ok(());
        }
        let v = eval(pres, &degrees, &t)?;
        let better = match best {
            None => true,
            Some((bt, bv)) => v < *bv || (v == *bv && t < *bt),
        };
        if better {
            *best = Some((t, v));
        }
        Ok(())
    };
    for i in 1..grid as i64 {
        consider(frac(i, grid as i64), &mut best)?;
    }
    let mut step = frac(1, grid as i64);
    for _ in 0..2 {
        step /= BigRational::from_integer(2.into());
        let centre = best.as_ref().unwrap().0.clone();
        consider(&centre - &step, &mut best)?;
        consider(&centre + &step, &mut best)?;
    }
    let (t, value) = best.unwrap();
    Ok(GsCertificate {
        is_gs: value.is_negative(),
        t,
        value,
        degrees: pres.degrees.clone(),
        grid,
        tail_bound: pres.tail_bound.clone(),
    })
}

/// deg_p of each relator over the free generators named by `symbols`.
pub fn relator_degrees(relators: &[String], symbols: &str, p: u32, max_deg: usize) -> Result<Vec<Degree>> {
    let k = symbols.chars().count();
    relators
        .iter()
        .map(|r| magnus_deg(&parse_free_word(r, symbols)?, k, p, max_deg))
        .collect()
}

impl GsCertificate {
    pub fn to_json(&self, d: u32, p: Option<u32>) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("is_GS".into(), Value::Bool(self.is_gs));
        m.insert("d".into(), d.into());
        m.insert("p".into(), p.map(Value::from).unwrap_or(Value::Null));
        m.insert("t_num".into(), big_json(self.t.numer()));
        m.insert("t_den".into(), big_json(self.t.denom()));
        m.insert("value_num".into(), big_json(self.value.numer()));
        m.insert("value_den".into(), big_json(self.value.denom()));
        m.insert("value_decimal".into(), Value::String(format!("{:.6}", crate::ring::rational_to_f64(&self.value))));
        m.insert("degrees".into(), Value::Array(self.degrees.iter().map(|d| degree_json(*d)).collect()));
        m.insert("grid".into(), self.grid.into());
        if let Some(b) = &self.tail_bound {
            m.insert("tail_bound".into(), fraction_json(b));
        }
        Value::Object(m)
    }
}

fn degree_json(d: Degree) -> Value {
    match d {
        Degree::Finite(n) => n.into(),
        Degree::Above(n) => Value::String(format!(">{n}")),
    }
}

/// Re-evaluate a certificate from its JSON alone.
pub fn verify_certificate(v: &Value) -> Result<bool> {
    let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| Error::Parse("certificate lacks d".into()))? as u32;
    let mut degrees = Vec::new();
    for x in v.get("degrees").and_then(Value::as_array).ok_or_else(|| Error::Parse("certificate lacks degrees".into()))? {
        match x {
            Value::Number(n) => degrees.push(Degree::Finite(
                n.as_u64().ok_or_else(|| Error::Parse("bad degree".into()))? as usize,
            )),
            _ => return Err(Error::Contract("certificates with truncated degrees cannot be verified".into())),
        }
    }
    let tail_bound = match v.get("tail_bound") {
        Some(b) => Some(fraction_from_json(b)?),
        None => None,
    };
    let pres = GsPresentation { d, degrees, p: None, tail_bound };
    let t = BigRational::new(json_big(v, "t_num")?, json_big(v, "t_den")?);
    let value = BigRational::new(json_big(v, "value_num")?, json_big(v, "value_den")?);
    let claimed = v.get("is_GS").and_then(Value::as_bool).ok_or_else(|| Error::Parse("certificate lacks is_GS".into()))?;
    let actual = gs_value(&pres, &t)?;
    Ok(actual == value && claimed == (value < BigRational::zero()))
}
