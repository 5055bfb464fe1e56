//! Exact rational and complex-rational arithmetic, directed-rounding big
//! floats, and q-series primitives.

pub mod bigfloat;
pub mod complex;
pub mod qseries;
pub mod rational;

pub use bigfloat::{sqrt_rational, BigFloat, Round, DEFAULT_PRECISION};
pub use complex::ComplexRational;
pub use qseries::{qbinomial, qpoch, qpoch_finite, qpoch_infinite, qpoch_multi};
pub use rational::{frac, int, parse_rational, pow_i, Rational};

/// `|z|²`, exact.
pub fn complex_abs2(z: &ComplexRational) -> Rational {
    z.abs2()
}
