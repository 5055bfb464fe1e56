//! `(α;q)_{j+k} / (αβ;q)_{j+k}`: normalized moments of the little q-Jacobi
//! weight, orthogonalized by little q-Jacobi polynomials.

use num_traits::{One, Signed, Zero};

use super::{bound_erratum, erratum, matrix_erratum, ratio, Family};
use crate::arith::{int, pow_i, qbinomial, qpoch, qpoch_infinite, BigFloat, ComplexRational, Rational, Round};
use crate::error::{Error, Result};
use crate::gram::{delta, Bound, Erratum, OrthoSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AskeyParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub q: Rational,
}

impl AskeyParams {
    pub fn new(alpha: Rational, beta: Rational, q: Rational) -> Self {
        Self { alpha, beta, q }
    }

    /// The invertibility conditions that do not depend on the order; the
    /// order-dependent ones (`q, α, β ≠ q^{−k}`) surface as zero denominators.
    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_zero() {
            return Err(Error::InvalidParameter("alpha must be nonzero".into()));
        }
        if self.q.is_zero() || self.q.abs().is_one() {
            return Err(Error::InvalidParameter(format!("q = {} must be nonzero and not ±1", self.q)));
        }
        if self.beta.is_zero() {
            return Err(Error::InvalidParameter("beta must be nonzero".into()));
        }
        Ok(())
    }

    pub fn pd_mode(&self) -> bool {
        let unit = |x: &Rational| x.is_positive() && x < &Rational::one();
        unit(&self.q) && unit(&self.alpha) && unit(&self.beta)
    }

    fn ab(&self) -> Rational {
        &self.alpha * &self.beta
    }
}

fn binom2(n: usize) -> i64 {
    (n * (n.max(1) - 1) / 2) as i64
}

#[derive(Clone, Debug)]
pub struct Askey {
    p: AskeyParams,
}

impl Askey {
    pub fn new(params: AskeyParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { p: params })
    }

    pub fn params(&self) -> &AskeyParams {
        &self.p
    }

    /// `μ_n / μ_0 = (α;q)_n / (αβ;q)_n`.
    pub fn moment_ratio(&self, n: usize) -> Result<Rational> {
        ratio(qpoch(&self.p.alpha, &self.p.q, n), qpoch(&self.p.ab(), &self.p.q, n), "(alpha beta; q)_n = 0")
    }

    /// `μ_n / μ_0` from partial sums of `Σ_m (β;q)_m α^m q^{nm} / (q;q)_m`,
    /// each series run until its terms fall below `2^{−prec−16}` of the sum.
    pub fn moment_ratio_series(&self, n: usize, prec: u32) -> Result<BigFloat> {
        if !self.p.pd_mode() {
            return Err(Error::NonConvergent("series needs 0 < q, alpha, beta < 1".into()));
        }
        let (a, b, q) = (&self.p.alpha, &self.p.beta, &self.p.q);
        let wp = prec + 64;
        let series = |shift: usize| -> Rational {
            let x = BigFloat::from_rational(&(a * pow_i(q, shift as i64)), wp, Round::Nearest);
            let eps = Rational::new(1.into(), num_bigint::BigInt::one() << (prec as usize + 16));
            let mut term = BigFloat::from_i64(1, wp);
            let mut sum = term.clone();
            let mut m = 0usize;
            loop {
                let mi = m as i64;
                // t_{m+1}/t_m = (1 − βq^m) x / (1 − q^{m+1})
                let f = (Rational::one() - b * pow_i(q, mi)) / (Rational::one() - pow_i(q, mi + 1));
                term = term.mul(&BigFloat::from_rational(&f, wp, Round::Nearest), Round::Nearest).mul(&x, Round::Nearest);
                sum = sum.add(&term, Round::Nearest);
                m += 1;
                if term.to_rational().abs() < &sum.to_rational() * &eps {
                    break;
                }
            }
            sum.to_rational()
        };
        Ok(BigFloat::from_rational(&(series(n) / series(0)), prec, Round::Nearest))
    }

    /// Terminating `₂φ₁(q^{−n}, αβq^{n−1}; α; q; qx)`.
    pub fn little_q_jacobi_eval(&self, n: usize, x: &ComplexRational) -> Result<ComplexRational> {
        let (a, q) = (&self.p.alpha, &self.p.q);
        let top = pow_i(q, -(n as i64));
        let shifted = self.p.ab() * pow_i(q, n as i64 - 1);
        let qx = x.scale(q);
        let mut acc = ComplexRational::zero();
        let mut power = ComplexRational::one();
        for k in 0..=n {
            let num = qpoch(&top, q, k) * qpoch(&shifted, q, k);
            let den = qpoch(q, q, k) * qpoch(a, q, k);
            acc += &power.scale(&ratio(num, den, "(q, alpha; q)_k = 0")?);
            power = &power * &qx;
        }
        Ok(acc)
    }

    /// `∏_{m=1}^n (q,α,β;q)_m α^{n(n+1)/2} q^{n(n²−1)/3} / ∏ (αβq^{m−1};q)_m (αβ;q)_{2m}`.
    fn det_product(&self, n: usize) -> Result<Rational> {
        let (a, b, q) = (&self.p.alpha, &self.p.beta, &self.p.q);
        let ab = self.p.ab();
        let ni = n as i64;
        let mut num = pow_i(a, ni * (ni + 1) / 2) * pow_i(q, ni * (ni * ni - 1) / 3);
        let mut den = Rational::one();
        for m in 1..=n {
            num *= qpoch(q, q, m) * qpoch(a, q, m) * qpoch(b, q, m);
            den *= qpoch(&(&ab * pow_i(q, m as i64 - 1)), q, m) * qpoch(&ab, q, 2 * m);
        }
        ratio(num, den, "vanishing (alpha beta; q) factor")
    }

    fn inverse_prefactor(&self, j: usize, k: usize) -> Result<Rational> {
        let (a, q) = (&self.p.alpha, &self.p.q);
        let sign = if (j + k).is_multiple_of(2) { int(1) } else { int(-1) };
        let num = sign * pow_i(q, binom2(j + 1) + binom2(k + 1));
        ratio(num, qpoch(a, q, j) * qpoch(a, q, k), "(alpha; q)_j = 0")
    }

    /// The printed inverse entry, summed over `m = 0..=n` with `(αβ;q)_{2m}`
    /// in the denominator and no `(α;q)_m`.
    pub fn printed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<Rational> {
        let (a, b, q) = (&self.p.alpha, &self.p.beta, &self.p.q);
        let ab = self.p.ab();
        let mut sum = Rational::zero();
        for m in 0..=n {
            if m < j.max(k) {
                continue; // the q-binomials vanish
            }
            let s = &ab * pow_i(q, m as i64 - 1);
            let num = qbinomial(m, j, q)? * qbinomial(m, k, q)? * qpoch(&s, q, j) * qpoch(&s, q, k);
            let den = pow_i(&(a * pow_i(q, (j + k) as i64)), m as i64)
                * qpoch(q, q, m)
                * qpoch(b, q, m)
                * qpoch(&ab, q, 2 * m)
                * qpoch(&s, q, m);
            sum += ratio(num, den, "vanishing q-Pochhammer")?;
        }
        Ok(self.inverse_prefactor(j, k)? * sum)
    }

    /// `1/Σ_ℓ d2_ℓ p̂_ℓ(−1)²`, the bound with the infinite products cancelled.
    fn cancelled_bound(&self, n: usize) -> Result<Rational> {
        let minus_one = ComplexRational::from_int(-1);
        let mut total = Rational::zero();
        for l in 0..=n {
            let p = self.little_q_jacobi_eval(l, &minus_one)?.re;
            total += self.d2(l)? * &p * &p;
        }
        ratio(Rational::one(), total, "empty bound sum")
    }

    /// The bound through infinite products: `h_ℓ` carries `(αβ;q)_∞/(α;q)_∞`,
    /// divided out again in front. Cross-checks [`Family::closed_bound`].
    pub fn infinite_product_bound(&self, n: usize, prec: u32) -> Result<BigFloat> {
        self.infinite_product_form(n, prec, false)
    }

    /// Same, with the prefactor multiplied in front as printed.
    pub fn printed_bound(&self, n: usize, prec: u32) -> Result<BigFloat> {
        self.infinite_product_form(n, prec, true)
    }

    fn infinite_product_form(&self, n: usize, prec: u32, printed: bool) -> Result<BigFloat> {
        if !self.p.pd_mode() {
            return Err(Error::NotPositiveDefinite);
        }
        let wp = prec + 64;
        let f = |r: &Rational| BigFloat::from_rational(r, wp, Round::Nearest);
        let eps = BigFloat::from_rational(&Rational::new(1.into(), num_bigint::BigInt::one() << (wp as usize)), wp, Round::Nearest);
        let qf = f(&self.p.q);
        let prefactor = qpoch_infinite(&f(&self.p.ab()), &qf, &eps, wp)?
            .div(&qpoch_infinite(&f(&self.p.alpha), &qf, &eps, wp)?, Round::Nearest);
        let minus_one = ComplexRational::from_int(-1);
        let mut total = BigFloat::zero(wp);
        for l in 0..=n {
            let p = f(&self.little_q_jacobi_eval(l, &minus_one)?.re);
            // h_ℓ = prefactor / d2_ℓ
            let h = prefactor.div(&f(&self.d2(l)?), Round::Nearest);
            total = total.add(&p.mul(&p, Round::Nearest).div(&h, Round::Nearest), Round::Nearest);
        }
        let inv = BigFloat::from_i64(1, wp).div(&total, Round::Nearest);
        let v = if printed { prefactor.mul(&inv, Round::Nearest) } else { inv.div(&prefactor, Round::Nearest) };
        Ok(BigFloat::from_rational(&v.to_rational(), prec, Round::Nearest))
    }
}

impl OrthoSystem for Askey {
    fn connection(&self, n: usize, k: usize) -> Result<ComplexRational> {
        Ok(delta(n, k))
    }

    /// `(−1)^n (q^{−n}, αβq^{n−1};q)_k q^k / (q, α;q)_k`.
    fn a_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        if k > n {
            return Ok(ComplexRational::zero());
        }
        let (a, q) = (&self.p.alpha, &self.p.q);
        let top = pow_i(q, -(n as i64));
        let shifted = self.p.ab() * pow_i(q, n as i64 - 1);
        let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
        let num = sign * qpoch(&top, q, k) * qpoch(&shifted, q, k) * pow_i(q, k as i64);
        let den = qpoch(q, q, k) * qpoch(a, q, k);
        Ok(ComplexRational::real(ratio(num, den, "(q, alpha; q)_k = 0")?))
    }

    /// `(1 − αβq^{2n−1})(α, αβ/q;q)_n / ((1 − αβ/q)(q,β;q)_n α^n)`.
    fn d2(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            // the (1 − αβ/q) factors cancel identically
            return Ok(Rational::one());
        }
        let (a, b, q) = (&self.p.alpha, &self.p.beta, &self.p.q);
        let ab = self.p.ab();
        let ni = n as i64;
        let abq = &ab / q;
        let num = (Rational::one() - &ab * pow_i(q, 2 * ni - 1)) * qpoch(a, q, n) * qpoch(&abq, q, n);
        let den = (Rational::one() - &abq) * qpoch(q, q, n) * qpoch(b, q, n) * pow_i(a, ni);
        ratio(num, den, "vanishing norm factor")
    }
}

impl Family for Askey {
    fn tag(&self) -> &'static str {
        "askey"
    }

    fn entry(&self, j: usize, k: usize) -> Result<Option<ComplexRational>> {
        Ok(Some(ComplexRational::real(self.moment_ratio(j + k)?)))
    }

    fn closed_det(&self, n: usize) -> Result<ComplexRational> {
        Ok(ComplexRational::real(self.det_product(n)?))
    }

    /// `(−1)^{j+k} q^{C(j+1,2)+C(k+1,2)} / ((α)_j(α)_k) · Σ_{m ≥ max(j,k)}
    /// [m,j][m,k] (αβq^{m−1})_j (αβq^{m−1})_k (α)_m (αβ)_{2m} / ((αq^{j+k})^m (q,β)_m (αβq^{m−1})_m)`.
    fn closed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        let (a, b, q) = (&self.p.alpha, &self.p.beta, &self.p.q);
        let ab = self.p.ab();
        let mut sum = Rational::zero();
        for m in j.max(k)..=n {
            let s = &ab * pow_i(q, m as i64 - 1);
            let num = qbinomial(m, j, q)?
                * qbinomial(m, k, q)?
                * qpoch(&s, q, j)
                * qpoch(&s, q, k)
                * qpoch(a, q, m)
                * qpoch(&ab, q, 2 * m);
            let den =
                pow_i(&(a * pow_i(q, (j + k) as i64)), m as i64) * qpoch(q, q, m) * qpoch(b, q, m) * qpoch(&s, q, m);
            sum += ratio(num, den, "vanishing q-Pochhammer")?;
        }
        Ok(ComplexRational::real(self.inverse_prefactor(j, k)? * sum))
    }

    fn closed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        if !self.p.pd_mode() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Bound::from_exact(self.cancelled_bound(n)?, prec))
    }

    fn pd_mode(&self, _n: usize) -> bool {
        self.p.pd_mode()
    }

    fn default_z0(&self) -> Option<ComplexRational> {
        Some(ComplexRational::from_int(-1))
    }

    fn printed(&self, n: usize, prec: u32) -> Result<Vec<Erratum>> {
        let order = n + 1;
        let printed_inverse = crate::matrix::ExactMatrix::from_fn(order, |j, k| {
            Ok(ComplexRational::real(self.printed_inverse_entry(n, j, k)?))
        });
        let inverse = self.closed_inverse(n)?;
        let mut out = vec![
            erratum("askey.det", &self.closed_det(n)?, &crate::gram::closed_dets(self, n)?.1),
            matrix_erratum("askey.inverse", &printed_inverse, &inverse),
        ];
        if self.p.pd_mode() {
            let printed = self.printed_bound(n, prec).map(|v| Bound { value: v, exact: None, certified: true });
            let corrected = self.closed_bound(n, prec);
            let mut e = bound_erratum("askey.bound", &printed, &corrected);
            // the infinite-product form is only ever equal up to rounding
            if let (Ok(p), Ok(c)) = (&printed, &corrected) {
                e.matches = p.value.rel_diff(&c.value) <= 2f64.powi(-(prec as i32) / 2);
            }
            out.push(e);
        }
        Ok(out)
    }
}
