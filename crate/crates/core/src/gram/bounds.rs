//! Lower bounds for the smallest eigenvalue from the orthonormal coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::engine::{build_a, build_h};
use super::system::OrthoSystem;
use crate::arith::rational::sqrt_exact;
use crate::arith::{sqrt_rational, BigFloat, ComplexRational, Rational, Round};
use crate::error::{Error, Result};

/// Extra bits carried through directed-rounded sums before the final rounding.
const GUARD_BITS: u32 = 32;

/// A lower-bound candidate. `value` is never above the true quantity; `exact`
/// holds it as a rational whenever no square root was irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: BigFloat,
    pub exact: Option<Rational>,
    /// False when a hypothesis of the bound failed and the number is only informative.
    pub certified: bool,
}

impl Bound {
    pub fn from_exact(r: Rational, prec: u32) -> Self {
        Self { value: BigFloat::from_rational(&r, prec, Round::Down), exact: Some(r), certified: true }
    }

    /// Exact value if known, else the rounded-down value as a rational.
    pub fn as_rational(&self) -> Rational {
        self.exact.clone().unwrap_or_else(|| self.value.to_rational())
    }

    pub fn uncertified(mut self) -> Self {
        self.certified = false;
        self
    }
}

fn require_pd_scales<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<()> {
    if !sys.same_uv() {
        return Err(Error::NotApplicable("bounds need u = v".into()));
    }
    for l in 0..=n {
        if !sys.d2(l)?.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
    }
    Ok(())
}

/// `1 / Σ_ℓ s_ℓ (Σ_j √r_{ℓj})²` rounded down. Exact when every `√r` is rational;
/// otherwise each root and every partial sum is rounded up.
pub fn reciprocal_of_root_sums(rows: &[(Rational, Vec<Rational>)], prec: u32) -> Bound {
    let exact_roots: Option<Vec<Rational>> =
        rows.iter().flat_map(|(_, r)| r.iter()).map(sqrt_exact).collect();
    if exact_roots.is_some() {
        let mut total = Rational::zero();
        for (s, r) in rows {
            let t: Rational = r.iter().map(|x| sqrt_exact(x).unwrap()).sum();
            total += s * &t * &t;
        }
        return Bound::from_exact(total.recip(), prec);
    }
    let wp = prec + GUARD_BITS;
    let mut total = BigFloat::zero(wp);
    for (s, r) in rows {
        let mut t = BigFloat::zero(wp);
        for x in r {
            t = t.add(&sqrt_rational(x, wp, Round::Up), Round::Up);
        }
        let s = BigFloat::from_rational(s, wp, Round::Up);
        total = total.add(&s.mul(&t.mul(&t, Round::Up), Round::Up), Round::Up);
    }
    let value = BigFloat::from_rational(&total.to_rational().recip(), prec, Round::Down);
    Bound { value, exact: None, certified: true }
}

/// `(b1, b2)`: `1/Σ d2_ℓ Σ_j |â_ℓj|²` and `1/Σ d2_ℓ (Σ_j |â_ℓj|)²`.
pub fn theorem_bounds<S: OrthoSystem + ?Sized>(sys: &S, n: usize, prec: u32) -> Result<(Bound, Bound)> {
    require_pd_scales(sys, n)?;
    let a = build_a(sys, n)?;
    let mut s1 = Rational::zero();
    let mut rows = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let moduli: Vec<Rational> = (0..=l).map(|j| a.core()[(l, j)].abs2()).collect();
        s1 += &a.d2()[l] * moduli.iter().sum::<Rational>();
        rows.push((a.d2()[l].clone(), moduli));
    }
    Ok((Bound::from_exact(s1.recip(), prec), reciprocal_of_root_sums(&rows, prec)))
}

/// `Σ_k â_{ℓ,k} z^k`.
pub fn core_poly_at<S: OrthoSystem + ?Sized>(sys: &S, l: usize, z: &ComplexRational) -> Result<ComplexRational> {
    let mut acc = ComplexRational::zero();
    for k in (0..=l).rev() {
        acc = &(&acc * z) + &sys.a_core(l, k)?;
    }
    Ok(acc)
}

/// `Σ_k k â_{ℓ,k} z^{k-1}`.
pub fn core_poly_derivative_at<S: OrthoSystem + ?Sized>(
    sys: &S,
    l: usize,
    z: &ComplexRational,
) -> Result<ComplexRational> {
    let mut acc = ComplexRational::zero();
    for k in (1..=l).rev() {
        acc = &(&acc * z) + &sys.a_core(l, k)?.scale(&Rational::from_integer(BigInt::from(k)));
    }
    Ok(acc)
}

/// For every `ℓ ≤ n` the nonzero terms `â_{ℓ,k} z0^k` share one phase.
pub fn sign_aligned<S: OrthoSystem + ?Sized>(sys: &S, n: usize, z0: &ComplexRational) -> Result<bool> {
    for l in 0..=n {
        let mut zk = ComplexRational::one();
        let mut first: Option<ComplexRational> = None;
        for k in 0..=l {
            let t = &sys.a_core(l, k)? * &zk;
            zk = &zk * z0;
            if t.is_zero() {
                continue;
            }
            match &first {
                None => first = Some(t),
                Some(f) => {
                    let p = &t * &f.conj();
                    if !p.is_real() || !p.re.is_positive() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn require_unit(z0: &ComplexRational) -> Result<()> {
    if z0.abs2().is_one() {
        Ok(())
    } else {
        Err(Error::ModulusNotOne)
    }
}

/// `1/Σ_ℓ d2_ℓ |p̂_ℓ(z0)|²`; certified only when [`sign_aligned`] holds.
pub fn corollary_bound<S: OrthoSystem + ?Sized>(
    sys: &S,
    n: usize,
    z0: &ComplexRational,
    prec: u32,
) -> Result<Bound> {
    require_unit(z0)?;
    require_pd_scales(sys, n)?;
    sys.check_order(n)?;
    let mut total = Rational::zero();
    for l in 0..=n {
        total += sys.d2(l)? * core_poly_at(sys, l, z0)?.abs2();
    }
    if total.is_zero() {
        return Err(Error::ZeroDenominator("all polynomials vanish at z0".into()));
    }
    let b = Bound::from_exact(total.recip(), prec);
    Ok(if sign_aligned(sys, n, z0)? { b } else { b.uncertified() })
}

/// The Christoffel–Darboux closed form of [`corollary_bound`]:
/// `â_{n+1,n+1} / (d2_n â_{n,n} (p̂'_{n+1} p̂_n − p̂'_n p̂_{n+1})(z0))`.
///
/// Only meaningful for real power-basis systems whose `H` is a Hankel moment
/// matrix; anything else is `NotApplicable`.
pub fn cd_bound<S: OrthoSystem + ?Sized>(sys: &S, n: usize, z0: &ComplexRational, prec: u32) -> Result<Bound> {
    require_unit(z0)?;
    require_pd_scales(sys, n)?;
    match sys.max_order() {
        Some(m) if m <= n => {
            return Err(Error::Unavailable(format!("needs order {} generators, have {m}", n + 1)));
        }
        _ => {}
    }
    if !z0.is_real() {
        return Err(Error::NotApplicable("z0 must be real".into()));
    }
    let h = build_h(sys, n + 1)?;
    if !h.is_real() || !h.is_hankel() {
        return Err(Error::NotApplicable("Gram matrix is not a real Hankel moment matrix".into()));
    }
    let pn = core_poly_at(sys, n, z0)?;
    let pm = core_poly_at(sys, n + 1, z0)?;
    let dn = core_poly_derivative_at(sys, n, z0)?;
    let dm = core_poly_derivative_at(sys, n + 1, z0)?;
    let w = &(&dm * &pn) - &(&dn * &pm);
    if w.is_zero() {
        return Err(Error::ZeroDenominator("Wronskian vanishes at z0".into()));
    }
    let den = (&w * &sys.a_core(n, n)?).scale(&sys.d2(n)?);
    let v = sys.a_core(n + 1, n + 1)?.checked_div(&den)?;
    debug_assert!(v.is_real());
    let b = Bound::from_exact(v.re, prec);
    Ok(if sign_aligned(sys, n, z0)? { b } else { b.uncertified() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::gram::system::TableSystem;
    use crate::matrix::ExactMatrix;

    fn cr(n: i64) -> ComplexRational {
        ComplexRational::from_int(n)
    }

    /// Shifted Legendre cores for α = (0, 1, 2).
    fn legendre3() -> TableSystem {
        let core = ExactMatrix::from_rows(vec![
            vec![cr(1), cr(0), cr(0)],
            vec![cr(-1), cr(2), cr(0)],
            vec![cr(1), cr(-6), cr(6)],
        ])
        .unwrap();
        TableSystem::new(core, vec![int(1), int(3), int(5)]).unwrap()
    }

    #[test]
    fn bound_examples() {
        let (b1, b2) = theorem_bounds(&legendre3(), 1, 256).unwrap();
        assert_eq!(b1.exact, Some(frac(1, 16)));
        assert_eq!(b2.exact, Some(frac(1, 28)));
        let (b1, b2) = theorem_bounds(&legendre3(), 0, 256).unwrap();
        assert_eq!((b1.exact.unwrap(), b2.exact.unwrap()), (int(1), int(1)));
    }

    #[test]
    fn irrational_moduli_round_down() {
        // |1+i| = √2: denominator (1 + √2)² = 3 + 2√2 ≈ 5.828
        let core = ExactMatrix::from_rows(vec![vec![cr(1), cr(0)], vec![cr(1), "1+i".parse().unwrap()]]).unwrap();
        let sys = TableSystem::new(core, vec![int(1), int(1)]).unwrap();
        let (_, b2) = theorem_bounds(&sys, 1, 128).unwrap();
        assert!(b2.exact.is_none());
        let truth = 1.0 / (1.0 + (1.0 + 2f64.sqrt()).powi(2));
        assert!(b2.value.to_f64() <= truth && (truth - b2.value.to_f64()) < 1e-15);
    }

    #[test]
    fn corollary_examples() {
        let sys = legendre3();
        let b = corollary_bound(&sys, 1, &cr(-1), 256).unwrap();
        assert_eq!(b.exact, Some(frac(1, 28)));
        assert!(b.certified);
        let b = corollary_bound(&sys, 1, &cr(1), 256).unwrap();
        assert_eq!(b.exact, Some(frac(1, 4)));
        assert!(!b.certified);
        assert_eq!(corollary_bound(&sys, 0, &cr(1), 256).unwrap().exact, Some(int(1)));
        assert_eq!(corollary_bound(&sys, 1, &cr(2), 256), Err(Error::ModulusNotOne));
        assert!(sign_aligned(&sys, 2, &cr(-1)).unwrap());
    }

    #[test]
    fn cd_examples() {
        let sys = legendre3();
        assert_eq!(cd_bound(&sys, 0, &cr(-1), 256).unwrap().exact, Some(int(1)));
        assert_eq!(cd_bound(&sys, 1, &cr(-1), 256).unwrap().exact, Some(frac(1, 28)));
        assert!(matches!(cd_bound(&sys, 2, &cr(-1), 256), Err(Error::Unavailable(_))));
    }

    #[test]
    fn cd_needs_hankel_moments() {
        // H = [[1,-1],[-1,2]] is Hankel only up to order 2; order 3 from this table breaks it
        let core = ExactMatrix::from_rows(vec![
            vec![cr(1), cr(0), cr(0)],
            vec![cr(1), cr(1), cr(0)],
            vec![cr(0), cr(1), cr(1)],
        ])
        .unwrap();
        let sys = TableSystem::new(core, vec![int(1), int(1), int(1)]).unwrap();
        assert!(!build_h(&sys, 2).unwrap().is_hankel());
        assert!(matches!(cd_bound(&sys, 1, &cr(-1), 64), Err(Error::NotApplicable(_))));
        assert!(cd_bound(&sys, 0, &cr(1), 64).is_ok());
    }
}
