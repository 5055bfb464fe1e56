use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(super::rational::int(v))
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`, exact.
    pub fn abs2(&self) -> Rational {
        if self.im.is_zero() {
            &self.re * &self.re
        } else {
            &self.re * &self.re + &self.im * &self.im
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator("reciprocal of zero".into()));
        }
        if self.im.is_zero() {
            return Ok(Self::real(self.re.recip()));
        }
        let m = self.abs2();
        Ok(Self { re: &self.re / &m, im: -(&self.im / &m) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }

    /// Parses `re`, `re+imi`, `re-imi` or a bare imaginary `imi`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(text.to_string());
        let s = text.trim().replace('\u{2212}', "-");
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&s)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, imag_part(&body[i..]).ok_or_else(bad)??),
            None => (Rational::zero(), imag_part(body).ok_or_else(bad)??),
        };
        Ok(Self { re, im })
    }
}

fn imag_part(s: &str) -> Option<Result<Rational>> {
    match s {
        "" | "+" => Some(Ok(Rational::one())),
        "-" => Some(Ok(-Rational::one())),
        _ if s.ends_with(['+', '-']) => None,
        _ => Some(parse_rational(s)),
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", format_rational(&self.re), sign, format_rational(&self.im.abs()))
    }
}

impl FromStr for ComplexRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<Rational> for ComplexRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Zero for ComplexRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -self.re, im: -self.im }
    }
}

impl Add<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => ComplexRational::real(&self.re * &rhs.re),
            (true, false) => rhs.scale(&self.re),
            (false, true) => self.scale(&rhs.re),
            (false, false) => ComplexRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

/// Panics on division by zero; use [`ComplexRational::checked_div`] otherwise.
impl Div<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn div(self, rhs: &ComplexRational) -> ComplexRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $m(self, rhs: ComplexRational) -> ComplexRational { (&self).$m(&rhs) }
        }
        impl $tr<&ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $m(self, rhs: &ComplexRational) -> ComplexRational { (&self).$m(rhs) }
        }
        impl $tr<ComplexRational> for &ComplexRational {
            type Output = ComplexRational;
            fn $m(self, rhs: ComplexRational) -> ComplexRational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ComplexRational> for ComplexRational {
    fn mul_assign(&mut self, rhs: &ComplexRational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for ComplexRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for ComplexRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| &acc * &x)
    }
}
