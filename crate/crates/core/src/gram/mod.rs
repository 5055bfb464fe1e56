//! Gram matrices of orthogonal systems: `H_n`, its inverse and determinant,
//! and eigenvalue lower bounds, all from the triangular coefficient tables.

pub mod bounds;
pub mod engine;
pub mod report;
pub mod system;

pub use bounds::{
    cd_bound, core_poly_at, corollary_bound, reciprocal_of_root_sums, sign_aligned, theorem_bounds, Bound,
};
pub use engine::{
    build_a, build_b, build_h, closed_dets, connection_matrix, diagonal_rescale, diagonal_rescale_inverse,
    gram_inverse, recover_g,
};
pub use report::{matrix_strings, BoundEntry, BoundsReport, Comparison, Enclosure, Erratum, GramReport};
pub use system::{delta, OrthoSystem, TableSystem};
