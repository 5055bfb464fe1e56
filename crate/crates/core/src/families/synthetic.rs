//! A non-Hermitian test system: the Müntz u-basis with a second basis
//! `v = C u` for a fixed complex lower-triangular `C`, so `H = G C*`.

use num_traits::Zero;

use super::{Family, Muntz, MuntzParams};
use crate::arith::{frac, int, ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::gram::{Bound, OrthoSystem, TableSystem};
use crate::matrix::{lower_triangular_inverse, ExactMatrix};

/// `c_jj = j + 2`, `c_jk = (1 + i)/(j − k + 1)` below the diagonal.
pub fn default_connection(order: usize) -> Result<ExactMatrix> {
    ExactMatrix::from_fn(order, |j, k| {
        Ok(match j.cmp(&k) {
            std::cmp::Ordering::Equal => ComplexRational::from_int(j as i64 + 2),
            std::cmp::Ordering::Greater => {
                ComplexRational::new(int(1), int(1)).scale(&frac(1, (j - k + 1) as i64))
            }
            std::cmp::Ordering::Less => ComplexRational::zero(),
        })
    })
}

#[derive(Clone, Debug)]
pub struct Synthetic {
    base: Muntz,
    connection: ExactMatrix,
    table: TableSystem,
}

impl Synthetic {
    pub fn new(params: MuntzParams) -> Result<Self> {
        let base = Muntz::new(params)?;
        let c = default_connection(base.alphas().len())?;
        Self::with_connection(base, c)
    }

    pub fn with_connection(base: Muntz, connection: ExactMatrix) -> Result<Self> {
        if connection.order() != base.alphas().len() {
            return Err(Error::DimensionMismatch("connection order must match the exponent count".into()));
        }
        let table = TableSystem::from_system(&base, base.alphas().len(), connection.clone())?;
        Ok(Self { base, connection, table })
    }

    pub fn base(&self) -> &Muntz {
        &self.base
    }

    /// Leading `(n+1)×(n+1)` block of `C`.
    pub fn connection_block(&self, n: usize) -> Result<ExactMatrix> {
        self.connection.leading(n + 1)
    }
}

impl OrthoSystem for Synthetic {
    fn connection(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.table.connection(n, k)
    }

    fn a_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.table.a_core(n, k)
    }

    fn d2(&self, n: usize) -> Result<Rational> {
        self.table.d2(n)
    }

    fn same_uv(&self) -> bool {
        false
    }

    fn b_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.table.b_core(n, k)
    }

    fn max_order(&self) -> Option<usize> {
        self.table.max_order()
    }
}

impl Family for Synthetic {
    fn tag(&self) -> &'static str {
        "synthetic"
    }

    /// `Σ_m G_{j,m} conj(c_{k,m})`.
    fn entry(&self, j: usize, k: usize) -> Result<Option<ComplexRational>> {
        let mut acc = ComplexRational::zero();
        for m in 0..=k {
            let g = self.base.entry(j, m)?.expect("Müntz entries are explicit");
            acc += &(&g * &self.connection[(k, m)].conj());
        }
        Ok(Some(acc))
    }

    /// `det G · ∏ conj(c_jj)` with the Müntz product for `det G`.
    fn closed_det(&self, n: usize) -> Result<ComplexRational> {
        let mut det = self.base.closed_det(n)?;
        for j in 0..=n {
            det *= &self.connection[(j, j)].conj();
        }
        Ok(det)
    }

    /// `(C*)⁻¹ G⁻¹` with the Müntz inverse entries for `G⁻¹`.
    fn closed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational> {
        let c_inv = lower_triangular_inverse(&self.connection_block(n)?)?;
        let mut acc = ComplexRational::zero();
        // ((C*)⁻¹)_{j,m} = conj((C⁻¹)_{m,j}), nonzero for m ≥ j
        for m in j..=n {
            acc += &(&c_inv[(m, j)].conj() * &self.base.closed_inverse_entry(n, m, k)?);
        }
        Ok(acc)
    }

    fn closed_bound(&self, _n: usize, _prec: u32) -> Result<Bound> {
        Err(Error::NotApplicable("bounds need u = v".into()))
    }

    fn pd_mode(&self, _n: usize) -> bool {
        false
    }

    fn default_z0(&self) -> Option<ComplexRational> {
        None
    }
}
