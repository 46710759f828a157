//! JSON encodings shared by certificates: big integers as JSON numbers and
//! exact fractions as {num, den}.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// JSON number holding an arbitrarily large integer.
pub fn big_json(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

/// The integer under `key`, as a number or a decimal string.
pub fn json_big(v: &Value, key: &str) -> Result<BigInt> {
    let raw = v.get(key).ok_or_else(|| Error::Parse(format!("missing {key:?}")))?;
    let text = match raw {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::Parse(format!("{key:?} must be an integer"))),
    };
    text.parse().map_err(|e| Error::Parse(format!("{key:?}: {e}")))
}

pub fn fraction_json(r: &BigRational) -> Value {
    json!({"num": big_json(r.numer()), "den": big_json(r.denom())})
}

pub fn fraction_from_json(v: &Value) -> Result<BigRational> {
    let den = json_big(v, "den")?;
    if den == BigInt::from(0) {
        return Err(Error::Parse("fraction with zero denominator".into()));
    }
    Ok(BigRational::new(json_big(v, "num")?, den))
}

/// The fraction under `key`.
pub fn fraction_field(v: &Value, key: &str) -> Result<BigRational> {
    fraction_from_json(v.get(key).ok_or_else(|| Error::Parse(format!("missing {key:?}")))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_fractions_round_trip() {
        let r = BigRational::new(BigInt::from(7) << 200u32, BigInt::from(-3));
        let v = fraction_json(&r);
        let text = serde_json::to_string(&v).unwrap();
        assert!(v["num"].is_number());
        assert_eq!(fraction_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), r);
        assert!(fraction_from_json(&json!({"num": 1, "den": 0})).is_err());
    }
}
