//! The generic Gram identities: `H = A⁻¹(B⁻¹)*`, `H⁻¹ = B*A`,
//! `det G = ∏ a_jj⁻²`, `det H = det G · ∏ conj(c_jj)` and `G = H (C*)⁻¹`.

use num_traits::{One, Zero};

use super::system::OrthoSystem;
use crate::arith::{ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::matrix::{lower_triangular_inverse, ExactMatrix, FactoredTriangular};

fn core_matrix<F>(order: usize, mut coef: F) -> Result<ExactMatrix>
where
    F: FnMut(usize, usize) -> Result<ComplexRational>,
{
    ExactMatrix::from_fn(order, |l, j| if j <= l { coef(l, j) } else { Ok(ComplexRational::zero()) })
}

fn scales<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<Vec<Rational>> {
    (0..=n).map(|l| sys.d2(l)).collect()
}

/// `A_n` as core `â` plus squared scales.
pub fn build_a<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<FactoredTriangular> {
    sys.check_order(n)?;
    FactoredTriangular::new(core_matrix(n + 1, |l, j| sys.a_core(l, j))?, scales(sys, n)?)
}

/// `B_n`, sharing the scales of `A_n`.
pub fn build_b<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<FactoredTriangular> {
    sys.check_order(n)?;
    FactoredTriangular::new(core_matrix(n + 1, |l, j| sys.b_core(l, j))?, scales(sys, n)?)
}

/// `C_n`, lower triangular with nonzero diagonal.
pub fn connection_matrix<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<ExactMatrix> {
    sys.check_order(n)?;
    let c = core_matrix(n + 1, |l, j| sys.connection(l, j))?;
    if let Some(l) = (0..=n).find(|&l| c[(l, l)].is_zero()) {
        return Err(Error::ZeroDiagonal(l));
    }
    Ok(c)
}

/// `H_n = Â⁻¹ D⁻² (B̂⁻¹)*`; the square roots in `D` pair up and cancel.
pub fn build_h<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<ExactMatrix> {
    let a = build_a(sys, n)?;
    let a_inv = a.core_inverse();
    let b_inv = if sys.same_uv() { a_inv.clone() } else { build_b(sys, n)?.core_inverse() };
    let inv_d2: Vec<Rational> = a.d2().iter().map(Rational::recip).collect();
    let order = n + 1;
    ExactMatrix::from_fn(order, |j, k| {
        let mut acc = ComplexRational::zero();
        // both inverses are lower triangular
        for m in 0..=j.min(k) {
            let t = &a_inv[(j, m)] * &b_inv[(k, m)].conj();
            if !t.is_zero() {
                acc += &t.scale(&inv_d2[m]);
            }
        }
        Ok(acc)
    })
}

/// `γ_{j,k} = Σ_{ℓ ≥ max(j,k)} d2_ℓ · conj(b̂_{ℓ,j}) · â_{ℓ,k}`, i.e. `H_n⁻¹ = B*A`.
pub fn gram_inverse<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<ExactMatrix> {
    let a = build_a(sys, n)?;
    let b = if sys.same_uv() { a.clone() } else { build_b(sys, n)? };
    let (ac, bc, d2) = (a.core(), b.core(), a.d2());
    ExactMatrix::from_fn(n + 1, |j, k| {
        let mut acc = ComplexRational::zero();
        for l in j.max(k)..=n {
            let t = &bc[(l, j)].conj() * &ac[(l, k)];
            if !t.is_zero() {
                acc += &t.scale(&d2[l]);
            }
        }
        Ok(acc)
    })
}

/// `(det G_n, det H_n)` from the diagonals alone.
pub fn closed_dets<S: OrthoSystem + ?Sized>(sys: &S, n: usize) -> Result<(Rational, ComplexRational)> {
    sys.check_order(n)?;
    let mut det_g = Rational::one();
    let mut conj_c = ComplexRational::one();
    for j in 0..=n {
        let a = sys.a_core(j, j)?;
        if a.is_zero() {
            return Err(Error::ZeroDiagonal(j));
        }
        det_g /= sys.d2(j)? * a.abs2();
        conj_c *= &sys.connection(j, j)?.conj();
    }
    let det_h = conj_c.scale(&det_g);
    Ok((det_g, det_h))
}

/// `G = H (C*)⁻¹`.
pub fn recover_g(h: &ExactMatrix, c: &ExactMatrix) -> Result<ExactMatrix> {
    if h.order() != c.order() {
        return Err(Error::DimensionMismatch(format!("H is {}, C is {}", h.order(), c.order())));
    }
    let c_inv = lower_triangular_inverse(c).map_err(|e| match e {
        Error::InvalidParameter(_) => Error::InvalidParameter("C must be lower triangular".into()),
        other => other,
    })?;
    Ok(h * &c_inv.conj_transpose())
}

/// Given `Y = X⁻¹`, the inverse of `X̃ = (e · x_jk · c_j · d_k)` is
/// `Ỹ = (y_jk / (e · d_j · c_k))`.
pub fn diagonal_rescale_inverse(
    y: &ExactMatrix,
    e: &ComplexRational,
    cvec: &[ComplexRational],
    dvec: &[ComplexRational],
) -> Result<ExactMatrix> {
    let n = y.order();
    if cvec.len() != n || dvec.len() != n {
        return Err(Error::DimensionMismatch("scale vectors must match the matrix order".into()));
    }
    if e.is_zero() || cvec.iter().chain(dvec).any(Zero::is_zero) {
        return Err(Error::ZeroScale("rescaling factors must be nonzero".into()));
    }
    let e_inv = e.recip()?;
    let c_inv: Vec<_> = cvec.iter().map(|c| c.recip()).collect::<Result<_>>()?;
    let d_inv: Vec<_> = dvec.iter().map(|d| d.recip()).collect::<Result<_>>()?;
    ExactMatrix::from_fn(n, |j, k| Ok(&(&y[(j, k)] * &e_inv) * &(&d_inv[j] * &c_inv[k])))
}

/// `X̃ = (e · x_jk · c_j · d_k)`, the forward half of [`diagonal_rescale_inverse`].
pub fn diagonal_rescale(
    x: &ExactMatrix,
    e: &ComplexRational,
    cvec: &[ComplexRational],
    dvec: &[ComplexRational],
) -> Result<ExactMatrix> {
    let n = x.order();
    if cvec.len() != n || dvec.len() != n {
        return Err(Error::DimensionMismatch("scale vectors must match the matrix order".into()));
    }
    ExactMatrix::from_fn(n, |j, k| Ok(&(&x[(j, k)] * e) * &(&cvec[j] * &dvec[k])))
}
