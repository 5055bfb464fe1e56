//! Exact construction and verification of generalized Hilbert (moment)
//! matrices.
//!
//! Every matrix is built from an orthonormal system `p_n = Σ a_{n,k} u_k`
//! whose coefficients are stored as a rational core `â` and a squared scale
//! `d²` ([`FactoredTriangular`]), so the Gram identities `H = A⁻¹(B⁻¹)*`,
//! `H⁻¹ = B*A` and `det G = ∏ a_{jj}⁻²` evaluate without square roots.
//! Closed forms for four matrix families are checked against fraction-free
//! elimination and a Sturm-certified smallest eigenvalue.

pub mod arith;
pub mod error;
pub mod families;
pub mod gram;
pub mod matrix;

pub use arith::{BigFloat, ComplexRational, Rational, Round, DEFAULT_PRECISION};
pub use error::{Error, Result};
pub use gram::{Bound, GramReport, OrthoSystem};
pub use matrix::{EigenEnclosure, ExactMatrix, FactoredTriangular, RationalPolynomial};
