//! Binary floating point at an explicit working precision, with directed
//! rounding. Every operation is evaluated exactly over the rationals and then
//! rounded once, so a single operation never errs by more than one ulp.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    TowardZero,
    Nearest,
}

impl Round {
    fn rounds_magnitude_up(self, negative: bool) -> Option<bool> {
        match self {
            Round::Down => Some(negative),
            Round::Up => Some(!negative),
            Round::TowardZero => Some(false),
            Round::Nearest => None,
        }
    }
}

/// `mantissa · 2^exponent`, with `2^(prec-1) ≤ |mantissa| < 2^prec` unless zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    prec: u32,
}

fn bits(n: &BigUint) -> i64 {
    n.bits() as i64
}

fn shl(n: BigUint, e: i64) -> BigUint {
    if e >= 0 {
        n << (e as usize)
    } else {
        n >> ((-e) as usize)
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        Self { mantissa: BigInt::zero(), exponent: 0, prec: prec.max(MIN_PRECISION) }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn from_rational(r: &Rational, prec: u32, round: Round) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if r.is_zero() {
            return Self::zero(prec);
        }
        let negative = r.is_negative();
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude().clone();
        // choose e so that num / (den · 2^e) lands in [2^(prec-1), 2^prec)
        let mut e = bits(&num) - bits(&den) - prec as i64;
        let (mut q, mut rem, div) = loop {
            let (n2, d2) = if e >= 0 { (num.clone(), &den << (e as usize)) } else { (&num << ((-e) as usize), den.clone()) };
            let (q, rem) = n2.div_rem(&d2);
            if bits(&q) > prec as i64 {
                e += 1;
            } else if bits(&q) < prec as i64 {
                e -= 1;
            } else {
                break (q, rem, d2);
            }
        };
        if !rem.is_zero() {
            let up = match round.rounds_magnitude_up(negative) {
                Some(up) => up,
                None => {
                    rem <<= 1usize;
                    match rem.cmp(&div) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => q.is_odd(),
                    }
                }
            };
            if up {
                q += 1u32;
                if bits(&q) > prec as i64 {
                    q >>= 1usize;
                    e += 1;
                }
            }
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Self { mantissa: BigInt::from_biguint(sign, q), exponent: e, prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()), prec, Round::Nearest)
    }

    /// The exact rational value.
    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << (self.exponent as usize))
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << ((-self.exponent) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    fn with(&self, r: Rational, round: Round) -> Self {
        Self::from_rational(&r, self.prec, round)
    }

    pub fn add(&self, rhs: &Self, round: Round) -> Self {
        self.with(self.to_rational() + rhs.to_rational(), round)
    }

    pub fn sub(&self, rhs: &Self, round: Round) -> Self {
        self.with(self.to_rational() - rhs.to_rational(), round)
    }

    pub fn mul(&self, rhs: &Self, round: Round) -> Self {
        self.with(self.to_rational() * rhs.to_rational(), round)
    }

    /// Panics if `rhs` is zero.
    pub fn div(&self, rhs: &Self, round: Round) -> Self {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        self.with(self.to_rational() / rhs.to_rational(), round)
    }

    pub fn recip(&self, round: Round) -> Self {
        Self::from_i64(1, self.prec).div(self, round)
    }

    pub fn sqrt(&self, round: Round) -> Self {
        sqrt_rational(&self.to_rational(), self.prec, round)
    }

    pub fn abs(&self) -> Self {
        Self { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    /// `|self - other| / |other|`, rounded up. Infinite when `other` is zero and `self` is not.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let d = (self.to_rational() - other.to_rational()).abs() / other.to_rational().abs();
        d.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Number of decimal digits that faithfully represents this precision: ⌈P·log10 2⌉.
    pub fn decimal_digits(prec: u32) -> usize {
        // log10(2) < 0.30103 so this never undershoots by more than one digit
        ((prec as f64) * std::f64::consts::LOG10_2).ceil() as usize
    }

    /// Scientific decimal string with `digits` significant digits, rounded per `round`.
    pub fn to_decimal(&self, digits: usize, round: Round) -> String {
        decimal_string(&self.to_rational(), digits.max(1), round)
    }
}

/// `√r` rounded at `prec` bits. Panics on negative input.
pub fn sqrt_rational(r: &Rational, prec: u32, round: Round) -> BigFloat {
    assert!(!r.is_negative(), "square root of negative number");
    if r.is_zero() {
        return BigFloat::zero(prec);
    }
    // √(n/d) = √(n·d·4^k) / (d·2^k)
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let nd = n * d;
    let k = ((2 * prec as i64 + 8 - bits(&nd)).max(0) / 2 + 2) as usize;
    let scaled = shl(nd, 2 * k as i64);
    let mut s = scaled.sqrt();
    let exact = &s * &s == scaled;
    let den = d << k;
    if !exact && matches!(round, Round::Up) {
        s += 1u32;
    }
    let approx = Rational::new(BigInt::from_biguint(Sign::Plus, s), BigInt::from_biguint(Sign::Plus, den));
    // s is a floor (or ceiling) with ≥ 2·prec bits, so a second directed rounding keeps the direction
    BigFloat::from_rational(&approx, prec, round)
}

fn pow10(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e)
}

fn decimal_string(r: &Rational, digits: usize, round: Round) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    // find e10 with 10^e10 ≤ a < 10^(e10+1)
    let mut e10 = {
        let f = a.numer().bits() as f64 - a.denom().bits() as f64;
        (f * std::f64::consts::LOG10_2).floor() as i64
    };
    let scale = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(pow10(e as usize))
        } else {
            Rational::new(BigInt::one(), pow10((-e) as usize))
        }
    };
    while a < scale(e10) {
        e10 -= 1;
    }
    while a >= scale(e10 + 1) {
        e10 += 1;
    }
    let shifted = &a / scale(e10 - (digits as i64 - 1));
    let (q, rem) = shifted.numer().div_rem(shifted.denom());
    let up = if rem.is_zero() {
        false
    } else {
        match round.rounds_magnitude_up(negative) {
            Some(up) => up,
            None => (rem * 2u32) >= *shifted.denom(),
        }
    };
    let mut q = if up { q + 1u32 } else { q };
    if q >= pow10(digits) {
        q /= 10u32;
        e10 += 1;
    }
    let s = q.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e10 != 0 {
        out.push_str(&format!("e{e10}"));
    }
    out
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(Self::decimal_digits(self.prec), Round::Nearest))
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_rational().cmp(&other.to_rational()))
    }
}
