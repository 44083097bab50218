//! Exact rational helpers over arbitrary-precision integers.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `2^{-n}`.
pub fn inv_pow2(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n as usize)
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip = if ip.is_empty() || ip == "-" { "0" } else { ip };
        let whole: BigInt = ip.parse().map_err(|_| bad())?;
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = whole.abs() * &scale + frac;
        let n = if neg || whole.is_negative() { -mag } else { mag };
        return Ok(Rational::new(n, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical `"num/den"` rendering (integers keep the `/1`).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn from_pair(n: &BigInt, d: &BigInt) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n.clone(), d.clone()))
}

pub fn in_unit(r: &Rational) -> bool {
    !r.is_negative() && r <= &Rational::one()
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod as_string {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing rationals as `[num, den]` integer pairs; values
/// outside the 128-bit range fall back to decimal strings.
pub mod as_pair {
    use super::Rational;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    fn part(b: &BigInt) -> Value {
        match b.to_i64() {
            Some(v) => Value::from(v),
            None => Value::from(b.to_string()),
        }
    }

    pub fn to_value(r: &Rational) -> Value {
        Value::Array(vec![part(r.numer()), part(r.denom())])
    }

    pub fn from_value(v: &Value) -> Result<Rational, String> {
        let arr = v.as_array().filter(|a| a.len() == 2).ok_or("expected [num, den]")?;
        let mut out = Vec::with_capacity(2);
        for x in arr {
            let b: BigInt = match x {
                Value::Number(n) => n.to_string().parse().map_err(|_| format!("bad integer {n}"))?,
                Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}"))?,
                _ => return Err("expected integer".into()),
            };
            out.push(b);
        }
        super::from_pair(&out[0], &out[1]).map_err(|e| e.to_string())
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        to_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        from_value(&v).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a list of rationals as `"num/den"` strings.
pub mod as_string_vec {
    use super::{fmt_rational, Rational};
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }
}
