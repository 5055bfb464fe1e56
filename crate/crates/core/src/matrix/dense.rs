use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Signed, Zero};

use crate::arith::{ComplexRational, Rational};
use crate::error::{Error, Result};

/// Dense square matrix of exact complex rationals, row-major. Order ≥ 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<ComplexRational>,
}

impl ExactMatrix {
    pub fn new(order: usize, entries: Vec<ComplexRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::DimensionMismatch("matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn<F>(order: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<ComplexRational>,
    {
        let mut entries = Vec::with_capacity(order * order);
        for j in 0..order {
            for k in 0..order {
                entries.push(f(j, k)?);
            }
        }
        Self::new(order, entries)
    }

    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::DimensionMismatch("rows are not square".into()));
        }
        Self::new(order, rows.into_iter().flatten().collect())
    }

    /// Real matrix from rational rows.
    pub fn from_rational_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(ComplexRational::real).collect())
                .collect(),
        )
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |j, k| {
            Ok(if j == k { ComplexRational::one() } else { ComplexRational::zero() })
        })
    }

    pub fn diagonal(diag: &[ComplexRational]) -> Result<Self> {
        Self::from_fn(diag.len(), |j, k| {
            Ok(if j == k { diag[j].clone() } else { ComplexRational::zero() })
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, j: usize, k: usize) -> &ComplexRational {
        &self.entries[j * self.order + k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexRational]> {
        self.entries.chunks(self.order)
    }

    pub fn entries(&self) -> &[ComplexRational] {
        &self.entries
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.order;
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                entries.push(self.get(k, j).conj());
            }
        }
        Self { order: n, entries }
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.order).all(|j| (j..self.order).all(|k| *self.get(j, k) == self.get(k, j).conj()))
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(ComplexRational::is_real)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.order).all(|j| (j + 1..self.order).all(|k| self.get(j, k).is_zero()))
    }

    /// Entries depend only on `j + k`.
    pub fn is_hankel(&self) -> bool {
        let n = self.order;
        (0..n).all(|j| (1..n).all(|k| j + 1 >= n || self.get(j, k) == self.get(j + 1, k - 1)))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.order).all(|j| {
            (0..self.order).all(|k| {
                let e = self.get(j, k);
                if j == k { e.is_one() } else { e.is_zero() }
            })
        })
    }

    pub fn trace(&self) -> ComplexRational {
        (0..self.order).map(|j| self.get(j, j).clone()).sum()
    }

    pub fn scale(&self, s: &ComplexRational) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::DimensionMismatch(format!("{} × {}", self.order, rhs.order)));
        }
        let n = self.order;
        Self::from_fn(n, |j, k| {
            let mut acc = ComplexRational::zero();
            for m in 0..n {
                let a = self.get(j, m);
                if !a.is_zero() {
                    acc += &(a * rhs.get(m, k));
                }
            }
            Ok(acc)
        })
    }

    /// Leading `m × m` block.
    pub fn leading(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.order {
            return Err(Error::IndexOutOfRange(format!("leading block {m} of order {}", self.order)));
        }
        Self::from_fn(m, |j, k| Ok(self.get(j, k).clone()))
    }

    fn to_rows(&self) -> Vec<Vec<ComplexRational>> {
        self.rows().map(<[_]>::to_vec).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn bareiss_det(&self) -> ComplexRational {
        let n = self.order;
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = ComplexRational::one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return ComplexRational::zero(),
                }
            }
            bareiss_step(&mut a, k, n, &prev);
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate { -det } else { det }
    }

    /// Exact inverse by Bareiss elimination of `[M | I]` followed by back substitution.
    pub fn exact_inverse(&self) -> Result<Self> {
        let n = self.order;
        let width = 2 * n;
        let mut a: Vec<Vec<ComplexRational>> = self
            .rows()
            .enumerate()
            .map(|(j, row)| {
                let mut r = row.to_vec();
                r.extend((0..n).map(|k| if j == k { ComplexRational::one() } else { ComplexRational::zero() }));
                r
            })
            .collect();
        let mut prev = ComplexRational::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let i = (k + 1..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularMatrix)?;
                a.swap(k, i);
            }
            if k + 1 < n {
                bareiss_step(&mut a, k, width, &prev);
                prev = a[k][k].clone();
            }
        }
        let mut x = vec![vec![ComplexRational::zero(); n]; n];
        for c in 0..n {
            for i in (0..n).rev() {
                let mut acc = a[i][n + c].clone();
                for j in i + 1..n {
                    if !a[i][j].is_zero() {
                        acc -= &(&a[i][j] * &x[j][c]);
                    }
                }
                x[i][c] = acc.checked_div(&a[i][i])?;
            }
        }
        Self::from_rows(x)
    }

    /// Leading principal minors `Δ_1, …, Δ_m` from unpivoted Bareiss elimination.
    /// Stops after the first zero minor.
    pub fn leading_minors(&self) -> Vec<ComplexRational> {
        let n = self.order;
        let mut a = self.to_rows();
        let mut minors = Vec::with_capacity(n);
        let mut prev = ComplexRational::one();
        for k in 0..n {
            minors.push(a[k][k].clone());
            if a[k][k].is_zero() || k + 1 == n {
                break;
            }
            bareiss_step(&mut a, k, n, &prev);
            prev = a[k][k].clone();
        }
        minors
    }

    /// Sylvester's criterion with exact minors. Errors on non-Hermitian input.
    pub fn is_positive_definite(&self) -> Result<bool> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let minors = self.leading_minors();
        Ok(minors.len() == self.order && minors.iter().all(|m| m.is_real() && m.re.is_positive()))
    }
}

/// One fraction-free elimination step below pivot `k`, columns `k+1..width`.
fn bareiss_step(a: &mut [Vec<ComplexRational>], k: usize, width: usize, prev: &ComplexRational) {
    let n = a.len();
    let (top, bottom) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    let divide = !prev.is_one();
    for row in bottom.iter_mut().take(n - k - 1) {
        let lead = row[k].clone();
        for j in k + 1..width {
            let mut v = &row[j] * pivot;
            if !lead.is_zero() && !pivot_row[j].is_zero() {
                v -= &(&lead * &pivot_row[j]);
            }
            row[j] = if divide { v.checked_div(prev).expect("Bareiss pivot is nonzero") } else { v };
        }
        row[k] = ComplexRational::zero();
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = ComplexRational;
    fn index(&self, (j, k): (usize, usize)) -> &ComplexRational {
        self.get(j, k)
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut ComplexRational {
        &mut self.entries[j * self.order + k]
    }
}

/// Panics on order mismatch; see [`ExactMatrix::try_mul`].
impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix orders differ")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        write!(f, "ExactMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn real(rows: &[&[(i64, i64)]]) -> ExactMatrix {
        ExactMatrix::from_rational_rows(rows.iter().map(|r| r.iter().map(|&(n, d)| frac(n, d)).collect()).collect()).unwrap()
    }

    fn hilbert(n: usize) -> ExactMatrix {
        ExactMatrix::from_fn(n, |j, k| Ok(ComplexRational::real(frac(1, (j + k + 1) as i64)))).unwrap()
    }

    #[test]
    fn rejects_order_zero() {
        assert!(ExactMatrix::new(0, vec![]).is_err());
        assert!(ExactMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(ExactMatrix::identity(3).unwrap().bareiss_det(), ComplexRational::one());
        assert_eq!(hilbert(2).bareiss_det(), ComplexRational::real(frac(1, 12)));
        assert_eq!(real(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]).bareiss_det(), ComplexRational::zero());
        assert_eq!(hilbert(3).bareiss_det(), ComplexRational::real(frac(1, 2160)));
        // needs a row swap
        let m = real(&[&[(0, 1), (2, 1)], &[(3, 1), (1, 1)]]);
        assert_eq!(m.bareiss_det(), ComplexRational::real(int(-6)));
    }

    #[test]
    fn inverse_examples() {
        let id = ExactMatrix::identity(3).unwrap();
        assert_eq!(id.exact_inverse().unwrap(), id);
        assert_eq!(real(&[&[(2, 3)]]).exact_inverse().unwrap(), real(&[&[(3, 2)]]));
        assert_eq!(hilbert(2).exact_inverse().unwrap(), real(&[&[(4, 1), (-6, 1)], &[(-6, 1), (12, 1)]]));
        assert_eq!(real(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]).exact_inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn inverse_of_complex_matrix() {
        let z = |s: &str| s.parse::<ComplexRational>().unwrap();
        let m = ExactMatrix::from_rows(vec![
            vec![z("0"), z("1+2i"), z("1/3")],
            vec![z("2-i"), z("1/2"), z("0")],
            vec![z("i"), z("3"), z("-1/5+1/7i")],
        ])
        .unwrap();
        let inv = m.exact_inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
        assert_eq!(m.bareiss_det() * inv.bareiss_det(), ComplexRational::one());
    }

    #[test]
    fn positive_definiteness() {
        assert!(hilbert(3).is_positive_definite().unwrap());
        let minors = hilbert(3).leading_minors();
        assert_eq!(minors, vec![int(1), frac(1, 12), frac(1, 2160)].into_iter().map(ComplexRational::real).collect::<Vec<_>>());
        assert!(!real(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]).is_positive_definite().unwrap());
        assert!(!real(&[&[(0, 1)]]).is_positive_definite().unwrap());
        assert_eq!(real(&[&[(1, 1), (2, 1)], &[(0, 1), (1, 1)]]).is_positive_definite(), Err(Error::NotHermitian));
    }

    #[test]
    fn structure_predicates() {
        assert!(hilbert(4).is_hankel());
        assert!(hilbert(4).is_hermitian());
        assert!(!real(&[&[(1, 1), (2, 1)], &[(3, 1), (1, 1)]]).is_hankel());
        assert!(ExactMatrix::identity(2).unwrap().is_lower_triangular());
    }
}
