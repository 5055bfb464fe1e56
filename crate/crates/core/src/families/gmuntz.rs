//! `1/(c α_j ᾱ_k − a(α_j + ᾱ_k) − b)`, the generalized Müntz matrices.

use num_traits::{One, Signed, Zero};

use super::{bound_erratum, check_distinct, check_nonempty, cratio, erratum, matrix_erratum, ratio, Family};
use crate::arith::{pow_i, ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::gram::{delta, reciprocal_of_root_sums, Bound, Erratum, OrthoSystem};
use crate::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMuntzParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub alphas: Vec<ComplexRational>,
}

impl GenMuntzParams {
    pub fn new(a: Rational, b: Rational, c: Rational, alphas: Vec<ComplexRational>) -> Self {
        Self { a, b, c, alphas }
    }

    /// `a² + bc`.
    pub fn discriminant(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.c
    }

    /// `c α_j ᾱ_k − a(α_j + ᾱ_k) − b`.
    pub fn form(&self, j: usize, k: usize) -> ComplexRational {
        let (x, y) = (&self.alphas[j], self.alphas[k].conj());
        let a = ComplexRational::real(self.a.clone());
        &(&(x * &y).scale(&self.c) - &(&a * &(x + &y))) - &ComplexRational::real(self.b.clone())
    }

    pub fn validate(&self) -> Result<()> {
        check_nonempty(&self.alphas)?;
        check_distinct(&self.alphas)?;
        if self.discriminant().is_zero() {
            return Err(Error::InvalidParameter("a^2 + bc = 0".into()));
        }
        for j in 0..self.alphas.len() {
            for k in 0..self.alphas.len() {
                if self.form(j, k).is_zero() {
                    return Err(Error::InvalidParameter(format!("entry ({j},{k}) has a zero denominator")));
                }
            }
            if (self.alphas[j].scale(&self.c) - ComplexRational::real(self.a.clone())).is_zero() {
                return Err(Error::InvalidParameter(format!("c alpha_{j} = a")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GenMuntz {
    p: GenMuntzParams,
}

impl GenMuntz {
    pub fn new(params: GenMuntzParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { p: params })
    }

    pub fn params(&self) -> &GenMuntzParams {
        &self.p
    }

    fn alpha(&self, k: usize) -> Result<&ComplexRational> {
        self.p
            .alphas
            .get(k)
            .ok_or_else(|| Error::Unavailable(format!("order {k} needs {} exponents, have {}", k + 1, self.p.alphas.len())))
    }

    /// `c|α_m|² − 2a Re α_m − b`, the diagonal of the form.
    fn weight(&self, m: usize) -> Rational {
        self.p.form(m, m).re
    }

    /// `|c α_j − a|²`.
    fn pole(&self, j: usize) -> Rational {
        (self.p.alphas[j].scale(&self.p.c) - ComplexRational::real(self.p.a.clone())).abs2()
    }

    fn coefficient(&self, n: usize, k: usize, top: Option<usize>) -> Result<ComplexRational> {
        self.alpha(n)?;
        let (a, b, c) = (&self.p.a, &self.p.b, &self.p.c);
        let alphas = &self.p.alphas;
        let mut num = ComplexRational::one();
        for j in 0..n {
            let aj = alphas[j].conj();
            let shift = cratio(
                &(&aj.scale(a) + &ComplexRational::real(b.clone())),
                &(&aj.scale(c) - &ComplexRational::real(a.clone())),
                "c alpha = a",
            )?;
            num *= &(&alphas[k] - &shift);
        }
        let mut den = ComplexRational::one();
        if let Some(top) = top {
            for j in (0..=top).filter(|&j| j != k) {
                den *= &(&alphas[k] - &alphas[j]);
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
        let alphas = &self.p.alphas;
        let disc = self.p.discriminant();
        let mut acc = ComplexRational::zero();
        for m in j.max(k)..=n {
            let mut num = ComplexRational::real(self.weight(m));
            for r in 0..m {
                // c α_r ᾱ_j − a(α_r + ᾱ_j) − b and its partner for k
                num *= &(&self.p.form(r, j) * &self.p.form(k, r));
            }
            let mut den = ComplexRational::real(pow_i(&disc, m as i64));
            let top = if printed { m.checked_sub(1) } else { Some(m) };
            if let Some(top) = top {
                for p in (0..=top).filter(|&p| p != j) {
                    den *= &(&alphas[p] - &alphas[j]).conj();
                }
                for q in (0..=top).filter(|&q| q != k) {
                    den *= &(&alphas[q] - &alphas[k]);
                }
            }
            acc += &cratio(&num, &den, "coinciding exponents")?;
        }
        Ok(acc)
    }

    pub fn printed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        self.inverse_sum(n, j, k, true)
    }

    fn bound_from(&self, n: usize, prec: u32, printed: bool) -> Result<Bound> {
        self.alpha(n)?;
        if !self.pd_mode(n) {
            return Err(Error::NotPositiveDefinite);
        }
        let disc = self.p.discriminant();
        let mut rows = Vec::with_capacity(n + 1);
        for l in 0..=n {
            let mut moduli = Vec::with_capacity(l + 1);
            for j in 0..=l {
                let mut num = Rational::one();
                for k in 0..l {
                    num *= self.p.form(j, k).abs2();
                }
                let top = if printed { l.checked_sub(1) } else { Some(l) };
                let mut den = Rational::one();
                if let Some(top) = top {
                    for k in (0..=top).filter(|&k| k != j) {
                        den *= (&self.p.alphas[j] - &self.p.alphas[k]).abs2();
                    }
                }
                moduli.push(ratio(num, den, "coinciding exponents")?);
            }
            rows.push((ratio(self.weight(l), pow_i(&disc, l as i64), "a^2 + bc = 0")?, moduli));
        }
        Ok(reciprocal_of_root_sums(&rows, prec))
    }

    /// The bound with the printed denominator range, reading the shadowed
    /// product index of the numerator as the inner summation variable.
    pub fn printed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        self.bound_from(n, prec, true)
    }
}

impl OrthoSystem for GenMuntz {
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
        let mut num = self.weight(n);
        for j in 0..n {
            num *= self.pole(j);
        }
        ratio(num, pow_i(&self.p.discriminant(), n as i64), "a^2 + bc = 0")
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.p.alphas.len() - 1)
    }
}

impl Family for GenMuntz {
    fn tag(&self) -> &'static str {
        "gmuntz"
    }

    fn entry(&self, j: usize, k: usize) -> Result<Option<ComplexRational>> {
        self.alpha(j.max(k))?;
        Ok(Some(self.p.form(j, k).recip()?))
    }

    fn closed_det(&self, n: usize) -> Result<ComplexRational> {
        self.alpha(n)?;
        let disc = self.p.discriminant();
        let mut num = pow_i(&disc, (n * (n + 1) / 2) as i64);
        let mut den = Rational::one();
        for k in 0..=n {
            num *= self.weight(k);
            for j in 0..k {
                num *= (&self.p.alphas[k] - &self.p.alphas[j]).abs2();
            }
            for j in 0..=k {
                den *= self.p.form(k, j).abs2();
            }
        }
        Ok(ComplexRational::real(ratio(num, den, "zero entry denominator")?))
    }

    fn closed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        self.inverse_sum(n, j, k, false)
    }

    fn closed_bound(&self, n: usize, prec: u32) -> Result<Bound> {
        self.bound_from(n, prec, false)
    }

    fn pd_mode(&self, n: usize) -> bool {
        self.p.discriminant().is_positive() && (0..=n.min(self.p.alphas.len() - 1)).all(|k| self.weight(k).is_positive())
    }

    fn default_z0(&self) -> Option<ComplexRational> {
        super::muntz::is_real_increasing(&self.p.alphas).then(|| ComplexRational::from_int(-1))
    }

    fn printed(&self, n: usize, prec: u32) -> Result<Vec<Erratum>> {
        let order = n + 1;
        let core = ExactMatrix::from_fn(order, |l, k| self.a_core(l, k))?;
        let printed_core =
            ExactMatrix::from_fn(order, |l, k| if k <= l { self.printed_coefficient(l, k) } else { Ok(ComplexRational::zero()) });
        let inverse = self.closed_inverse(n)?;
        let printed_inverse = ExactMatrix::from_fn(order, |j, k| self.printed_inverse_entry(n, j, k));
        Ok(vec![
            erratum("gmuntz.det", &self.closed_det(n)?, &crate::gram::closed_dets(self, n)?.1),
            matrix_erratum("gmuntz.coefficients", &printed_core, &core),
            matrix_erratum("gmuntz.inverse", &printed_inverse, &inverse),
            bound_erratum("gmuntz.bound", &self.printed_bound(n, prec), &self.closed_bound(n, prec)),
        ])
    }
}
