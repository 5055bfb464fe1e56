//! Univariate polynomials over the rationals, with Sturm chains for exact
//! real-root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
            None => Self::zero(),
        }
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        let d = rhs.degree().expect("polynomial division by zero");
        let lc = rhs.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d] / lc;
            if !c.is_zero() {
                for (j, r) in rhs.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * r;
                }
            }
            quot[i] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Yun's square-free decomposition `p = c · ∏ f_i^i`; returns `(f_i, i)` with nonconstant `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let dp = self.derivative();
        let a0 = self.gcd(&dp);
        let mut b = self.div_rem(&a0).0;
        let c = dp.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            let c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Scaled by a positive rational into coprime integer coefficients; signs are preserved.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }

    pub fn sturm_chain(&self) -> SturmChain {
        SturmChain::new(self)
    }
}

impl std::ops::Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        RationalPolynomial::new(
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPolynomial({self})")
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}·")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence of a square-free polynomial, each member stored as a
/// primitive integer polynomial so sign evaluation stays in `BigInt`.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &RationalPolynomial) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return Self { chain };
        }
        let mut a = p.clone();
        let mut b = p.derivative();
        chain.push(a.primitive_integer());
        while !b.is_zero() {
            chain.push(b.primitive_integer());
            let r = a.div_rem(&b).1;
            a = b;
            b = RationalPolynomial::new(r.coeffs.into_iter().map(|c| -c).collect());
        }
        Self { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all_roots(&self) -> usize {
        let signs = |at_neg_inf: bool| -> usize {
            let mut count = 0;
            let mut last = 0i8;
            for p in &self.chain {
                let deg = p.len() - 1;
                let lc = p[deg].signum();
                let mut s: i8 = if lc.is_positive() { 1 } else { -1 };
                if at_neg_inf && deg % 2 == 1 {
                    s = -s;
                }
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
            count
        };
        signs(true).saturating_sub(signs(false))
    }
}

/// Sign of `Σ c_i (n/d)^i`, computed as `Σ c_i n^i d^{deg-i}` with `d > 0`.
fn sign_at(coeffs: &[BigInt], x: &Rational) -> i8 {
    let n = x.numer();
    let d = x.denom();
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    // Horner over the homogenized form, from the top coefficient down
    for (k, c) in coeffs.iter().rev().enumerate() {
        if k == 0 {
            acc = c.clone();
        } else {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots of every square-free factor, weighted by multiplicity.
pub fn count_real_roots_with_multiplicity(p: &RationalPolynomial) -> usize {
    p.squarefree_decomposition()
        .iter()
        .map(|(f, mult)| f.sturm_chain().count_all_roots() * mult)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[-1, 0, 1]); // x² - 1
        let q = poly(&[1, 1]);
        let (quot, rem) = p.div_rem(&q);
        assert_eq!(quot, poly(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p.derivative(), poly(&[0, 2]));
        assert_eq!(p.eval(&frac(1, 2)), frac(-3, 4));
        assert_eq!(p.gcd(&poly(&[-1, 1])), poly(&[-1, 1]));
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn squarefree_parts() {
        // (x - 1)² (x + 2)
        let p = poly(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree().monic(), poly(&[-2, 1, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(count_real_roots_with_multiplicity(&p), 3);
        assert_eq!(count_real_roots_with_multiplicity(&poly(&[1, 0, 1])), 0);
    }

    #[test]
    fn sturm_counts() {
        // x² - 2
        let chain = poly(&[-2, 0, 1]).sturm_chain();
        assert_eq!(chain.count_all_roots(), 2);
        assert_eq!(chain.count_roots(&int(0), &int(2)), 1);
        assert_eq!(chain.count_roots(&int(-2), &int(2)), 2);
        assert_eq!(chain.count_roots(&frac(3, 2), &int(2)), 0);
        // (x-1)(x-2)(x-3): root at the right endpoint counts, at the left does not
        let chain = poly(&[-6, 11, -6, 1]).sturm_chain();
        assert_eq!(chain.count_roots(&int(1), &int(2)), 1);
        assert_eq!(chain.count_roots(&int(0), &int(3)), 3);
    }
}
