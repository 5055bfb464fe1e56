//! Fixtures shared by the criterion benches.

use ghm_core::families::{Lommel, LommelParams, Muntz, MuntzParams};
use ghm_core::arith::frac;
use ghm_core::ComplexRational;

/// Müntz system with exponents `0..=n`, i.e. the Hilbert matrix.
pub fn hilbert(n: usize) -> Muntz {
    let alphas = (0..=n as i64).map(ComplexRational::from_int).collect();
    Muntz::new(MuntzParams::new(alphas)).expect("distinct nonnegative exponents")
}

pub fn lommel() -> Lommel {
    Lommel::new(LommelParams::new(frac(1, 2), frac(1, 3))).expect("q, V in (0, 1)")
}
