//! Helpers around [`BigRational`]: strict text parsing, integer powers and
//! exact square roots.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `r^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow_i(r: &Rational, e: i64) -> Rational {
    let mut base = if e < 0 { r.recip() } else { r.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = Rational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// True when the representation is canonical: positive denominator, coprime parts.
pub fn is_normalized(r: &Rational) -> bool {
    use num_integer::Integer;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// Exact square root of a nonnegative rational when both parts are perfect squares.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(
            BigInt::from_biguint(Sign::Plus, sn),
            BigInt::from_biguint(Sign::Plus, sd),
        ))
    } else {
        None
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `p/q` or `p` with an optional leading `-` (ASCII or U+2212) or `+`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(text.to_string());
    let s = text.trim();
    let (neg, body) = if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    };
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (parse_digits(p).ok_or_else(bad)?, parse_digits(q).ok_or_else(bad)?),
        None => (parse_digits(body).ok_or_else(bad)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Canonical text form: `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
