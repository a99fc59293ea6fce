//! Exact rational scalars and their wire format.
//!
//! All LP values, matching weights, and threshold parameters are carried as
//! arbitrary-precision rationals. `num_rational::BigRational` already
//! guarantees the representation invariants (lowest terms, positive
//! denominator), so this module only adds construction helpers and the
//! `"p/q"` string format used by every external interface.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Rational from an integer pair. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an unsigned integer.
pub fn rat_u(value: u64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

/// Always renders with an explicit denominator, `"3/2"`, `"1/1"`, `"-7/3"`.
pub fn pq(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, or a bare integer `"p"` as shorthand for `p/1`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let numer: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let denom: BigInt = denom
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(numer, denom))
}

/// `⌈r⌉` as a `BigInt`.
pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// `⌈r⌉` clamped into `u64`; errors when negative or too large.
pub fn ceil_u64(r: &Rat) -> Result<u64> {
    let c = ceil_int(r);
    if c.is_negative() {
        return Ok(0);
    }
    u64::try_from(c).map_err(|_| Error::invalid("ceiling out of range"))
}

/// True for `0 <= r <= 1`.
pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

/// Serde adapter serializing a `Rat` as a `"p/q"` string.
pub mod pq_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rat>` fields.
pub mod pq_opt_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rat>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => ser.serialize_some(&pq(r)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Rat>, D::Error> {
        let s = Option::<String>::deserialize(de)?;
        s.map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
