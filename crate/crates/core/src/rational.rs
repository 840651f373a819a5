//! Exact rational scalars and their `"p/q"` text form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

/// The scalar type used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

/// Returns the value as `i64` when it is an integer in range.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"` with `q != 0`; the result is normalized.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ParseRationalError(format!("invalid rational numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ParseRationalError(format!("invalid rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(ParseRationalError(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Canonical text: gcd-reduced, positive denominator, `"p"` when integral.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Bit length of the largest numerator or denominator.
pub fn height_bits<'a>(xs: impl IntoIterator<Item = &'a Q>) -> u64 {
    xs.into_iter()
        .map(|x| x.numer().abs().bits().max(x.denom().bits()))
        .max()
        .unwrap_or(0)
}

pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_q().map_err(de::Error::custom)
    }
}

pub mod serde_q_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<RawRational>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_q().map_err(de::Error::custom))
            .collect()
    }
}

/// Accepts a `"p/q"` string or a bare JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Int(i64),
}

impl RawRational {
    fn into_q(self) -> Result<Q, ParseRationalError> {
        match self {
            RawRational::Text(s) => parse_q(&s),
            RawRational::Int(i) => Ok(q(i)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_normalize() {
        assert_eq!(fmt_q(&parse_q("6/-4").unwrap()), "-3/2");
        assert_eq!(fmt_q(&parse_q("10/5").unwrap()), "2");
        assert_eq!(fmt_q(&parse_q(" -7 ").unwrap()), "-7");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x/2").is_err());
    }

    #[test]
    fn helpers() {
        assert!(is_integral(&q(3)));
        assert!(!is_integral(&qr(3, 2)));
        assert_eq!(to_i64(&qr(8, 2)), Some(4));
        assert_eq!(lcm_of_denominators(&[qr(1, 4), qr(1, 6)]), BigInt::from(12));
    }
}
