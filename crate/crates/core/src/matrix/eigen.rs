//! Characteristic polynomials and the certified smallest eigenvalue.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dense::ExactMatrix;
use super::poly::{count_real_roots_with_multiplicity, RationalPolynomial};
use crate::arith::{BigFloat, ComplexRational, Rational, Round};
use crate::error::{Error, Result};

/// `det(λI - M)` for Hermitian `M`, by Faddeev–LeVerrier over the complex
/// rationals. Monic, with real rational coefficients.
pub fn char_poly(m: &ExactMatrix) -> Result<RationalPolynomial> {
    if !m.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let n = m.order();
    let mut coeffs = vec![ComplexRational::zero(); n + 1];
    coeffs[n] = ComplexRational::one();
    // M_k = A·M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A·M_k)/k
    let mut mk = ExactMatrix::identity(n)?;
    for k in 1..=n {
        let am = m * &mk;
        let c = -(am.trace().scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        coeffs[n - k] = c.clone();
        if k < n {
            mk = am;
            for j in 0..n {
                mk[(j, j)] += &c;
            }
        }
    }
    assert!(
        coeffs.iter().all(ComplexRational::is_real),
        "characteristic polynomial of a Hermitian matrix has real coefficients"
    );
    Ok(RationalPolynomial::new(coeffs.into_iter().map(|c| c.re).collect()))
}

/// Certified enclosure `lo ≤ λ_s ≤ hi` with a rounded representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    pub value: BigFloat,
    /// Square-free part of the characteristic polynomial the enclosure was isolated on.
    pub squarefree: RationalPolynomial,
}

impl EigenEnclosure {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// `b ≤ lo`: the value is certified as a lower bound for `λ_s`.
    pub fn certifies_lower_bound(&self, b: &Rational) -> bool {
        b <= &self.lo
    }

    /// The square-free characteristic polynomial changes sign on `[lo, hi]` (or vanishes at an endpoint).
    pub fn straddles_root(&self) -> bool {
        let a = self.squarefree.eval(&self.lo);
        let b = self.squarefree.eval(&self.hi);
        a.is_zero() || b.is_zero() || a.is_negative() != b.is_negative()
    }
}

/// Smallest eigenvalue of a Hermitian positive definite matrix, isolated by
/// Sturm bisection on the exact characteristic polynomial until
/// `hi - lo ≤ lo · 2^{-prec}`.
pub fn smallest_eigenvalue(m: &ExactMatrix, prec: u32) -> Result<EigenEnclosure> {
    if !m.is_positive_definite()? {
        return Err(Error::NotPositiveDefinite);
    }
    let p = char_poly(m)?;
    let sf = p.squarefree();
    let finish = |lo: Rational, hi: Rational, sf: RationalPolynomial| {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        EigenEnclosure { value: BigFloat::from_rational(&mid, prec, Round::Nearest), lo, hi, squarefree: sf }
    };
    if sf.degree() == Some(1) {
        let c = sf.coeffs();
        let root = -(&c[0] / &c[1]);
        return Ok(finish(root.clone(), root, sf));
    }
    let chain = sf.sturm_chain();
    let zero = Rational::zero();
    let base = chain.variations(&zero);
    let mut lo = zero;
    let mut hi = m.trace().re;
    debug_assert!(chain.count_roots(&lo, &hi) >= 1);
    let tol = Rational::new(BigInt::one(), BigInt::one() << prec as usize);
    let two = Rational::from_integer(2.into());
    while lo.is_zero() || &hi - &lo > &lo * &tol {
        let mid = (&lo + &hi) / &two;
        let below = base - chain.variations(&mid);
        if below >= 1 {
            if below == 1 && sf.eval(&mid).is_zero() {
                return Ok(finish(mid.clone(), mid, sf));
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s = simplest_between(&lo, &hi);
    if sf.eval(&s).is_zero() {
        return Ok(finish(s.clone(), s, sf));
    }
    Ok(finish(lo, hi, sf))
}

/// Rational with the smallest denominator in `[lo, hi]`, by continued fractions.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    fl.clone() + simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip()).recip()
}

/// Real roots of the characteristic polynomial counted with multiplicity;
/// equals the order for every Hermitian matrix.
pub fn real_eigenvalue_count(m: &ExactMatrix) -> Result<usize> {
    Ok(count_real_roots_with_multiplicity(&char_poly(m)?))
}
