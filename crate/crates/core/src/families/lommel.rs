//! Moments `s_{j+k+1,ν}` of the q-Lommel polynomials, parameterized by `q`
//! and `V = q^{ν+1}`. With `W = q^ν = V/q` every quantity is rational.
//!
//! The moment matrix is built from the orthonormal system in the variable
//! `y = x²`; the moments themselves are never summed.

use num_traits::{One, Signed, Zero};

use super::{bound_erratum, erratum, matrix_erratum, ratio, Family};
use crate::arith::{int, pow_i, qbinomial, qpoch, ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::gram::{corollary_bound, delta, Bound, Erratum, OrthoSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LommelParams {
    pub q: Rational,
    /// `q^{ν+1}`.
    pub v: Rational,
}

impl LommelParams {
    pub fn new(q: Rational, v: Rational) -> Self {
        Self { q, v }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: &Rational| x.is_positive() && x < &Rational::one();
        if !unit(&self.q) {
            return Err(Error::InvalidParameter(format!("q = {} must lie in (0, 1)", self.q)));
        }
        if !unit(&self.v) {
            return Err(Error::InvalidParameter(format!("V = {} must lie in (0, 1)", self.v)));
        }
        Ok(())
    }

    /// `q^ν`.
    pub fn w(&self) -> Rational {
        &self.v / &self.q
    }
}

/// Coefficient of `x^{2k}` in `h_{2n,ν+1}(x; q)`:
/// `q^{n(n+ν)} (V,q;q)_{n+k} (−4)^k q^{k(k−2n−ν)} / ((−1)^n (V,q;q)_{n−k} (q;q)_{2k})`.
pub fn lommel_h_coeff(n: usize, k: usize, q: &Rational, v: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let w = v / q;
    let (ni, ki) = (n as i64, k as i64);
    let power = pow_i(q, ni * ni + ki * ki - 2 * ni * ki) * pow_i(&w, ni - ki);
    let num = qpoch(v, q, n + k) * qpoch(q, q, n + k) * pow_i(&int(-4), ki) * power;
    let den = qpoch(v, q, n - k) * qpoch(q, q, n - k) * qpoch(q, q, 2 * k) * pow_i(&int(-1), ni);
    ratio(num, den, "vanishing q-Pochhammer")
}

#[derive(Clone, Debug)]
pub struct Lommel {
    p: LommelParams,
}

impl Lommel {
    pub fn new(params: LommelParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { p: params })
    }

    pub fn params(&self) -> &LommelParams {
        &self.p
    }

    /// `d2` with the `q`-exponent `ℓ(2ℓ+1)` replaced by `ℓ·e`.
    fn scale_with(&self, l: usize, e: i64) -> Rational {
        let (q, v, w) = (&self.p.q, &self.p.v, self.p.w());
        let li = l as i64;
        (Rational::one() - v * pow_i(q, 2 * li)) / (pow_i(&w, 2 * li) * pow_i(q, li * e))
    }

    /// `1/Σ_ℓ s_ℓ h_{2ℓ,ν+1}(i)²` for given scales.
    fn bound_with<F: Fn(usize) -> Rational>(&self, n: usize, prec: u32, scale: F) -> Result<Bound> {
        let mut total = Rational::zero();
        for l in 0..=n {
            let mut h = Rational::zero();
            for k in 0..=l {
                let c = lommel_h_coeff(l, k, &self.p.q, &self.p.v)?;
                h += if k % 2 == 0 { c } else { -c };
            }
            total += scale(l) * &h * &h;
        }
        Ok(Bound::from_exact(ratio(Rational::one(), total, "empty bound sum")?, prec))
    }

    /// The bound with the printed exponent `q^{2ℓν + ℓ(2n+1)}`.
    pub fn printed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        self.bound_with(n, prec, |l| self.scale_with(l, 2 * n as i64 + 1))
    }

    /// The printed determinant
    /// `2^{−n(n+1)} q^{n(n+1)(4n+6ν+5)} / ((V;q²)_{n+1} ∏_{m=1}^n (V;q)_{2m})`.
    pub fn printed_det(&self, n: usize) -> Result<Rational> {
        let (q, v, w) = (&self.p.q, &self.p.v, self.p.w());
        let t = (n * (n + 1)) as i64;
        let num = pow_i(&int(2), -t) * pow_i(q, t * (4 * n as i64 + 5)) * pow_i(&w, 6 * t);
        let mut den = qpoch(v, &(q * q), n + 1);
        for m in 1..=n {
            den *= qpoch(v, q, 2 * m);
        }
        ratio(num, den, "vanishing q-Pochhammer")
    }

    /// The sign pattern `â(ℓ,k)(−1)^k = (−1)^ℓ·|â(ℓ,k)|` for every `ℓ ≤ n`.
    pub fn signs_aligned(&self, n: usize) -> Result<bool> {
        for l in 0..=n {
            for k in 0..=l {
                let c = lommel_h_coeff(l, k, &self.p.q, &self.p.v)?;
                let negative = (l + k) % 2 == 1;
                if c.is_zero() || c.is_negative() != negative {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl OrthoSystem for Lommel {
    fn connection(&self, n: usize, k: usize) -> Result<ComplexRational> {
        Ok(delta(n, k))
    }

    fn a_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        if k > n {
            return Ok(ComplexRational::zero());
        }
        Ok(ComplexRational::real(lommel_h_coeff(n, k, &self.p.q, &self.p.v)?))
    }

    fn d2(&self, n: usize) -> Result<Rational> {
        Ok(self.scale_with(n, 2 * n as i64 + 1))
    }
}

impl Family for Lommel {
    fn tag(&self) -> &'static str {
        "lommel"
    }

    fn entry(&self, _j: usize, _k: usize) -> Result<Option<ComplexRational>> {
        Ok(None)
    }

    /// `q^{n(n+1)(4n+6ν+5)/6} / (2^{2n(n+1)} (V;q²)_{n+1} ∏_{m=1}^n (V;q)_{2m}²)`.
    fn closed_det(&self, n: usize) -> Result<ComplexRational> {
        let (q, v, w) = (&self.p.q, &self.p.v, self.p.w());
        let t = (n * (n + 1)) as i64;
        let num = pow_i(q, t * (4 * n as i64 + 5) / 6) * pow_i(&w, t);
        let mut den = pow_i(&int(2), 2 * t) * qpoch(v, &(q * q), n + 1);
        for m in 1..=n {
            let p = qpoch(v, q, 2 * m);
            den *= &p * &p;
        }
        Ok(ComplexRational::real(ratio(num, den, "vanishing q-Pochhammer")?))
    }

    fn closed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        let (q, v, w) = (&self.p.q, &self.p.v, self.p.w());
        let (ji, ki) = (j as i64, k as i64);
        let pre = pow_i(&int(-4), ji + ki) * pow_i(q, ji * ji + ki * ki) * pow_i(&w, -(ji + ki));
        let mut sum = Rational::zero();
        for l in j.max(k)..=n {
            let li = l as i64;
            let binoms = qbinomial(l + j, l - j, q)? * qbinomial(l + k, l - k, q)?;
            let weight = (Rational::one() - v * pow_i(q, 2 * li)) / pow_i(q, (2 * ji + 2 * ki + 1) * li);
            let num = qpoch(v, q, l + j) * qpoch(v, q, l + k);
            let den = qpoch(v, q, l - j) * qpoch(v, q, l - k);
            sum += binoms * weight * ratio(num, den, "vanishing q-Pochhammer")?;
        }
        Ok(ComplexRational::real(pre * sum))
    }

    /// Corollary form at `y = −1`: `1/Σ_ℓ d2_ℓ h_{2ℓ,ν+1}(i)²`.
    fn closed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        self.bound_with(n, prec, |l| self.scale_with(l, 2 * l as i64 + 1))
    }

    fn pd_mode(&self, _n: usize) -> bool {
        true
    }

    fn default_z0(&self) -> Option<ComplexRational> {
        Some(ComplexRational::from_int(-1))
    }

    fn printed(&self, n: usize, prec: u32) -> Result<Vec<Erratum>> {
        let corrected_det = self.closed_det(n)?.re;
        let inverse = self.closed_inverse(n);
        let engine_inverse = crate::gram::gram_inverse(self, n)?;
        let z0 = ComplexRational::from_int(-1);
        Ok(vec![
            erratum("lommel.det", &self.printed_det(n)?, &corrected_det),
            matrix_erratum("lommel.inverse", &inverse, &engine_inverse),
            bound_erratum("lommel.bound", &self.printed_bound(n, prec), &corollary_bound(self, n, &z0, prec)),
        ])
    }
}

/// `s_{m+1,ν}` for `m ≤ 2n`, read off the Gram-built `H_n` (`H_{j,k} = s_{j+k+1}`).
pub fn moments(l: &Lommel, n: usize) -> Result<Vec<Rational>> {
    let h = crate::gram::build_h(l, n)?;
    Ok((0..=2 * n).map(|m| h[(m.min(n), m - m.min(n))].re.clone()).collect())
}
