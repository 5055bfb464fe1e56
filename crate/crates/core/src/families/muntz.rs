//! `1/(α_j + ᾱ_k + 1)`, the Gram matrix of `x^{α_k}` on `[0, 1]`, with
//! Müntz–Legendre polynomials as the orthonormal system.

use num_traits::{One, Signed, Zero};

use super::{bound_erratum, check_distinct, check_nonempty, cratio, erratum, matrix_erratum, Family};
use crate::arith::{frac, int, ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::gram::{delta, reciprocal_of_root_sums, Bound, Erratum, OrthoSystem};
use crate::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuntzParams {
    pub alphas: Vec<ComplexRational>,
}

impl MuntzParams {
    pub fn new(alphas: Vec<ComplexRational>) -> Self {
        Self { alphas }
    }

    pub fn validate(&self) -> Result<()> {
        check_nonempty(&self.alphas)?;
        check_distinct(&self.alphas)?;
        for (j, a) in self.alphas.iter().enumerate() {
            for (k, b) in self.alphas.iter().enumerate() {
                if (a + &b.conj() + ComplexRational::one()).is_zero() {
                    return Err(Error::InvalidParameter(format!("alpha_{j} + conj(alpha_{k}) + 1 = 0")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Muntz {
    alphas: Vec<ComplexRational>,
}

impl Muntz {
    pub fn new(params: MuntzParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { alphas: params.alphas })
    }

    pub fn alphas(&self) -> &[ComplexRational] {
        &self.alphas
    }

    fn alpha(&self, k: usize) -> Result<&ComplexRational> {
        self.alphas
            .get(k)
            .ok_or_else(|| Error::Unavailable(format!("order {k} needs {} exponents, have {}", k + 1, self.alphas.len())))
    }

    /// `α_j + ᾱ_k + 1`.
    fn pair(&self, j: usize, k: usize) -> ComplexRational {
        &self.alphas[j] + &self.alphas[k].conj() + ComplexRational::one()
    }

    fn weight(&self, m: usize) -> Rational {
        int(1) + int(2) * &self.alphas[m].re
    }

    /// `∏_{j<n}(α_k + ᾱ_j + 1) / ∏_{j≤top, j≠k}(α_k − α_j)`; `top = n` is the
    /// orthogonal coefficient, `top = n − 1` the printed range.
    fn coefficient(&self, n: usize, k: usize, top: Option<usize>) -> Result<ComplexRational> {
        self.alpha(n)?;
        let mut num = ComplexRational::one();
        for j in 0..n {
            num *= &self.pair(k, j);
        }
        let mut den = ComplexRational::one();
        if let Some(top) = top {
            for j in (0..=top).filter(|&j| j != k) {
                den *= &(&self.alphas[k] - &self.alphas[j]);
            }
        }
        cratio(&num, &den, "coinciding exponents")
    }

    /// The printed coefficient, whose denominator stops at `n − 1`.
    pub fn printed_coefficient(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.coefficient(n, k, n.checked_sub(1))
    }

    fn inverse_sum(&self, n: usize, j: usize, k: usize, printed: bool) -> Result<ComplexRational> {
        self.alpha(n)?;
        let mut acc = ComplexRational::zero();
        for m in j.max(k)..=n {
            let mut num = ComplexRational::real(self.weight(m));
            for r in 0..m {
                num *= &(&self.pair(j, r).conj() * &self.pair(k, r));
            }
            let top = if printed { m.checked_sub(1) } else { Some(m) };
            let mut den = ComplexRational::one();
            if let Some(top) = top {
                for p in (0..=top).filter(|&p| p != j) {
                    den *= &(&self.alphas[j] - &self.alphas[p]).conj();
                }
                for q in (0..=top).filter(|&q| q != k) {
                    den *= &(&self.alphas[k] - &self.alphas[q]);
                }
            }
            acc += &cratio(&num, &den, "coinciding exponents")?;
        }
        Ok(acc)
    }

    /// The printed inverse entry, with both denominator products stopping at `m − 1`.
    pub fn printed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        self.inverse_sum(n, j, k, true)
    }

    fn bound_from(&self, n: usize, prec: u32, printed: bool) -> Result<Bound> {
        self.alpha(n)?;
        if !self.pd_mode(n) {
            return Err(Error::NotPositiveDefinite);
        }
        let mut rows = Vec::with_capacity(n + 1);
        for l in 0..=n {
            let moduli = (0..=l)
                .map(|j| {
                    let c = if printed { self.printed_coefficient(l, j)? } else { self.a_core(l, j)? };
                    Ok(c.abs2())
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((self.weight(l), moduli));
        }
        Ok(reciprocal_of_root_sums(&rows, prec))
    }

    /// The bound with the printed denominator range.
    pub fn printed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        self.bound_from(n, prec, true)
    }
}

impl OrthoSystem for Muntz {
    fn connection(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.alpha(n)?;
        Ok(delta(n, k))
    }

    fn a_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        if k > n {
            return Ok(ComplexRational::zero());
        }
        self.coefficient(n, k, Some(n))
    }

    fn d2(&self, n: usize) -> Result<Rational> {
        self.alpha(n)?;
        Ok(self.weight(n))
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.alphas.len() - 1)
    }
}

impl Family for Muntz {
    fn tag(&self) -> &'static str {
        "muntz"
    }

    fn entry(&self, j: usize, k: usize) -> Result<Option<ComplexRational>> {
        self.alpha(j.max(k))?;
        Ok(Some(self.pair(j, k).recip()?))
    }

    fn closed_det(&self, n: usize) -> Result<ComplexRational> {
        self.alpha(n)?;
        let mut det = Rational::one();
        for k in 0..=n {
            let mut num = Rational::one();
            let mut den = self.weight(k);
            for j in 0..k {
                num *= (&self.alphas[k] - &self.alphas[j]).abs2();
                den *= self.pair(k, j).abs2();
            }
            det *= super::ratio(num, den, "exponent pair sums to -1")?;
        }
        Ok(ComplexRational::real(det))
    }

    fn closed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        self.inverse_sum(n, j, k, false)
    }

    fn closed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        self.bound_from(n, prec, false)
    }

    fn pd_mode(&self, n: usize) -> bool {
        let half = frac(-1, 2);
        self.alphas.iter().take(n + 1).all(|a| a.re > half)
    }

    fn default_z0(&self) -> Option<ComplexRational> {
        is_real_increasing(&self.alphas).then(|| ComplexRational::from_int(-1))
    }

    fn printed(&self, n: usize, prec: u32) -> Result<Vec<Erratum>> {
        let order = n + 1;
        let core = ExactMatrix::from_fn(order, |l, k| self.a_core(l, k))?;
        let printed_core =
            ExactMatrix::from_fn(order, |l, k| if k <= l { self.printed_coefficient(l, k) } else { Ok(ComplexRational::zero()) });
        let inverse = self.closed_inverse(n)?;
        let printed_inverse = ExactMatrix::from_fn(order, |j, k| self.printed_inverse_entry(n, j, k));
        Ok(vec![
            erratum("muntz.det", &self.closed_det(n)?, &crate::gram::closed_dets(self, n)?.1),
            matrix_erratum("muntz.coefficients", &printed_core, &core),
            matrix_erratum("muntz.inverse", &printed_inverse, &inverse),
            bound_erratum("muntz.bound", &self.printed_bound(n, prec), &self.closed_bound(n, prec)),
        ])
    }
}

/// Real exponents in increasing order; then `â_{ℓ,k}(−1)^k` share the sign `(−1)^ℓ`.
pub fn is_real_increasing(alphas: &[ComplexRational]) -> bool {
    alphas.iter().all(|a| a.is_real()) && alphas.windows(2).all(|w| (&w[1].re - &w[0].re).is_positive())
}
