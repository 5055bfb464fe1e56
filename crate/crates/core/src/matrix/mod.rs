//! Exact dense linear algebra: fraction-free determinants and inverses,
//! characteristic polynomials and a Sturm-certified smallest eigenvalue.

pub mod dense;
pub mod eigen;
pub mod poly;
pub mod triangular;

pub use dense::ExactMatrix;
pub use eigen::{char_poly, real_eigenvalue_count, smallest_eigenvalue, EigenEnclosure};
pub use poly::{RationalPolynomial, SturmChain};
pub use triangular::{lower_triangular_inverse, FactoredTriangular};

use crate::arith::ComplexRational;
use crate::error::Result;

pub fn bareiss_det(m: &ExactMatrix) -> ComplexRational {
    m.bareiss_det()
}

pub fn exact_inverse(m: &ExactMatrix) -> Result<ExactMatrix> {
    m.exact_inverse()
}

pub fn is_positive_definite(m: &ExactMatrix) -> Result<bool> {
    m.is_positive_definite()
}
