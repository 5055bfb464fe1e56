//! q-Pochhammer symbols and Gaussian binomials.

use num_traits::{One, Signed, Zero};

use super::bigfloat::{BigFloat, Round};
use super::complex::ComplexRational;
use super::rational::{pow_i, Rational};
use crate::error::{Error, Result};

/// `(a; q)_m = ∏_{k<m} (1 - a q^k)`.
pub fn qpoch_finite(a: &ComplexRational, q: &Rational, m: usize) -> ComplexRational {
    let one = ComplexRational::one();
    let mut acc = ComplexRational::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= &(&one - &term);
        if acc.is_zero() {
            break;
        }
        term = term.scale(q);
    }
    acc
}

/// Real-valued `(a; q)_m`.
pub fn qpoch(a: &Rational, q: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= Rational::one() - &term;
        if acc.is_zero() {
            break;
        }
        term *= q;
    }
    acc
}

/// `(a_1, …, a_r; q)_m`.
pub fn qpoch_multi(args: &[&Rational], q: &Rational, m: usize) -> Rational {
    args.iter().map(|a| qpoch(a, q, m)).product()
}

/// Gaussian binomial `(q;q)_m / ((q;q)_j (q;q)_{m-j})`.
pub fn qbinomial(m: usize, j: usize, q: &Rational) -> Result<Rational> {
    if j > m {
        return Err(Error::IndexOutOfRange(format!("q-binomial [{m} choose {j}]")));
    }
    let den = qpoch(q, q, j) * qpoch(q, q, m - j);
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("(q;q) vanishes for q = {q}")));
    }
    Ok(qpoch(q, q, m) / den)
}

/// Gaussian binomial that is zero outside `0 ≤ j ≤ m`.
pub fn qbinomial_or_zero(m: i64, j: i64, q: &Rational) -> Result<Rational> {
    if m < 0 || j < 0 || j > m {
        Ok(Rational::zero())
    } else {
        qbinomial(m as usize, j as usize, q)
    }
}

/// `(a; q)_∞` to relative accuracy `eps`. The product is truncated at the first
/// `M` with `|a| q^M / (1 - q) < eps/2`; the rest of the error is P-bit rounding.
pub fn qpoch_infinite(a: &BigFloat, q: &BigFloat, eps: &BigFloat, prec: u32) -> Result<BigFloat> {
    let qr = q.to_rational();
    if !qr.is_positive() || qr >= Rational::one() {
        return Err(Error::NonConvergent(format!("q = {qr} is outside (0, 1)")));
    }
    if !eps.to_rational().is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let half_eps = eps.to_rational() / Rational::from_integer(2.into());
    let one_minus_q = Rational::one() - &qr;
    // shrink the working precision of q^M tracking so the cutoff search stays cheap
    let guard = BigFloat::from_rational(&qr, 64, Round::Up).to_rational();
    let mut tail = a.to_rational().abs() / &one_minus_q;
    let mut cutoff = 0usize;
    while tail >= half_eps {
        tail *= &guard;
        tail = BigFloat::from_rational(&tail, 64, Round::Up).to_rational();
        cutoff += 1;
    }
    let work = prec + 64;
    let one = BigFloat::from_i64(1, work);
    let mut acc = one.clone();
    let mut term = BigFloat::from_rational(&a.to_rational(), work, Round::Nearest);
    let qw = BigFloat::from_rational(&qr, work, Round::Nearest);
    for _ in 0..cutoff {
        acc = acc.mul(&one.sub(&term, Round::Nearest), Round::Nearest);
        if acc.is_zero() {
            break;
        }
        term = term.mul(&qw, Round::Nearest);
    }
    Ok(BigFloat::from_rational(&acc.to_rational(), prec, Round::Nearest))
}

/// `(a; q)_m` for negative `m` via `(a;q)_{-m} = 1 / (a q^{-m}; q)_m`.
pub fn qpoch_signed(a: &Rational, q: &Rational, m: i64) -> Result<Rational> {
    if m >= 0 {
        return Ok(qpoch(a, q, m as usize));
    }
    let den = qpoch(&(a * pow_i(q, m)), q, (-m) as usize);
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("({a};{q})_{m}")));
    }
    Ok(den.recip())
}
