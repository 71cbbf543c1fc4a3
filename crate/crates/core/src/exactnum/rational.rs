//! Helpers around [`BigRational`]: parsing, decimal printing and small
//! constructors used throughout the crate.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`. Panics on `d == 0`, like [`Rational::new`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-0.3"`, `"-3/10"`, `"12"`, `"1.5e-3"` and the unicode minus
/// sign into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::ParseRational(input.to_string());
    let s = input.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(err)?;
        let den = parse_decimal(den.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(num / den);
    }
    parse_decimal(&s).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|ch| ch.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).ok()?);
    let shift = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Fraction string, `"-3/10"` or `"5"`.
pub fn to_fraction_string(x: &Rational) -> String {
    x.to_string()
}

/// Fixed-point decimal with `digits` places, rounding half to even.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let (quot, rem) = scaled.numer().div_mod_floor(scaled.denom());
    // rem in [0, den)
    let twice = &rem * 2u32;
    let mut q = quot;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => q += 1u32,
        std::cmp::Ordering::Equal if q.is_odd() => q += 1u32,
        _ => {}
    }
    let negative = q.sign() == Sign::Minus;
    let magnitude = q.abs().to_string();
    let body = if digits == 0 {
        magnitude
    } else {
        let padded = format!("{magnitude:0>width$}", width = digits + 1);
        let (head, tail) = padded.split_at(padded.len() - digits);
        format!("{head}.{tail}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out of f64 range; saturate with the right sign.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root of a non-negative big integer, if it is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if numerator and denominator are both
/// perfect squares.
pub fn exact_rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(Rational::new(n, d))
}

/// Smallest power of two that is at least `x` (for `x > 0`), as a rational.
pub(crate) fn pow2_at_least(x: &Rational) -> Rational {
    let mut p = Rational::one();
    while &p < x {
        p *= int(2);
    }
    p
}

/// Serde adaptors printing rationals as fraction strings.
pub mod serde_fraction {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
