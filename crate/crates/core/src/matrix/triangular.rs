use num_traits::Zero;

use super::dense::ExactMatrix;
use crate::arith::{ComplexRational, Rational};
use crate::error::{Error, Result};

/// Lower-triangular `A` with `a_{ℓ,j} = d_ℓ · â_{ℓ,j}` and `d_ℓ = √(d2_ℓ)`.
/// Only the rational core `â` and the squared scales `d2` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredTriangular {
    core: ExactMatrix,
    d2: Vec<Rational>,
}

impl FactoredTriangular {
    pub fn new(core: ExactMatrix, d2: Vec<Rational>) -> Result<Self> {
        if d2.len() != core.order() {
            return Err(Error::DimensionMismatch(format!("{} scales for order {}", d2.len(), core.order())));
        }
        if !core.is_lower_triangular() {
            return Err(Error::InvalidParameter("core is not lower triangular".into()));
        }
        if let Some(l) = (0..core.order()).find(|&l| core[(l, l)].is_zero()) {
            return Err(Error::ZeroDiagonal(l));
        }
        if let Some(l) = d2.iter().position(Zero::is_zero) {
            return Err(Error::ZeroScale(format!("d2[{l}] = 0")));
        }
        Ok(Self { core, d2 })
    }

    pub fn order(&self) -> usize {
        self.core.order()
    }

    pub fn core(&self) -> &ExactMatrix {
        &self.core
    }

    pub fn d2(&self) -> &[Rational] {
        &self.d2
    }

    /// `|a_{ℓ,j}|² = d2_ℓ · |â_{ℓ,j}|²`.
    pub fn entry_abs2(&self, l: usize, j: usize) -> Rational {
        &self.d2[l] * self.core[(l, j)].abs2()
    }

    pub fn core_inverse(&self) -> ExactMatrix {
        lower_triangular_inverse(&self.core).expect("diagonal checked nonzero at construction")
    }
}

/// Inverse of a lower-triangular matrix by forward substitution.
pub fn lower_triangular_inverse(l: &ExactMatrix) -> Result<ExactMatrix> {
    if !l.is_lower_triangular() {
        return Err(Error::InvalidParameter("matrix is not lower triangular".into()));
    }
    let n = l.order();
    let mut x = ExactMatrix::identity(n)?;
    for i in 0..n {
        let inv_diag = l[(i, i)].recip().map_err(|_| Error::SingularMatrix)?;
        for j in 0..=i {
            let mut acc = if i == j { ComplexRational::from_int(1) } else { ComplexRational::zero() };
            for k in j..i {
                let lik = &l[(i, k)];
                if !lik.is_zero() {
                    acc -= &(lik * &x[(k, j)]);
                }
            }
            x[(i, j)] = &acc * &inv_diag;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn cr(n: i64) -> ComplexRational {
        ComplexRational::from_int(n)
    }

    #[test]
    fn validates_shape() {
        let core = ExactMatrix::from_rows(vec![vec![cr(1), cr(0)], vec![cr(-1), cr(2)]]).unwrap();
        let f = FactoredTriangular::new(core.clone(), vec![int(1), int(3)]).unwrap();
        assert_eq!(f.entry_abs2(1, 1), int(12));
        assert!(matches!(FactoredTriangular::new(core.clone(), vec![int(1)]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(FactoredTriangular::new(core, vec![int(1), int(0)]), Err(Error::ZeroScale(_))));
        let upper = ExactMatrix::from_rows(vec![vec![cr(1), cr(1)], vec![cr(0), cr(2)]]).unwrap();
        assert!(FactoredTriangular::new(upper, vec![int(1), int(1)]).is_err());
        let zero_diag = ExactMatrix::from_rows(vec![vec![cr(1), cr(0)], vec![cr(1), cr(0)]]).unwrap();
        assert_eq!(FactoredTriangular::new(zero_diag, vec![int(1), int(1)]), Err(Error::ZeroDiagonal(1)));
    }

    #[test]
    fn triangular_inverse() {
        let l = ExactMatrix::from_rows(vec![
            vec![cr(2), cr(0), cr(0)],
            vec!["1/2+i".parse().unwrap(), cr(-3), cr(0)],
            vec![cr(4), ComplexRational::real(frac(1, 3)), cr(5)],
        ])
        .unwrap();
        let inv = lower_triangular_inverse(&l).unwrap();
        assert!(inv.is_lower_triangular());
        assert!((&l * &inv).is_identity());
    }
}
