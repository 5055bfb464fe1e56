use num_traits::{One, Zero};

use crate::arith::{ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::matrix::{lower_triangular_inverse, ExactMatrix};

/// Generator bundle for one orthogonal system.
///
/// `v_n = Σ_k c(n,k) u_k` and `p_n = Σ_k d_n â(n,k) u_k = Σ_k d_n b̂(n,k) v_k`
/// with `d_n² = d2(n)`. Implementations must be pure; the engine may call
/// them in any order.
pub trait OrthoSystem {
    fn connection(&self, n: usize, k: usize) -> Result<ComplexRational>;

    fn a_core(&self, n: usize, k: usize) -> Result<ComplexRational>;

    fn d2(&self, n: usize) -> Result<Rational>;

    fn same_uv(&self) -> bool {
        true
    }

    fn b_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.a_core(n, k)
    }

    /// Highest order the generators are defined for, if bounded.
    fn max_order(&self) -> Option<usize> {
        None
    }

    fn check_order(&self, n: usize) -> Result<()> {
        match self.max_order() {
            Some(m) if n > m => Err(Error::Unavailable(format!("order {n} requested, generators stop at {m}"))),
            _ => Ok(()),
        }
    }
}

/// Kronecker delta as a connection coefficient.
pub fn delta(n: usize, k: usize) -> ComplexRational {
    if n == k {
        ComplexRational::one()
    } else {
        ComplexRational::zero()
    }
}

/// A system given by explicit coefficient tables. `v = C u` with `b̂ = â C⁻¹`.
#[derive(Clone, Debug)]
pub struct TableSystem {
    a_core: ExactMatrix,
    b_core: ExactMatrix,
    connection: ExactMatrix,
    d2: Vec<Rational>,
}

impl TableSystem {
    /// `u = v` system with the given core and scales.
    pub fn new(a_core: ExactMatrix, d2: Vec<Rational>) -> Result<Self> {
        let c = ExactMatrix::identity(a_core.order())?;
        Self::with_connection(a_core, d2, c)
    }

    pub fn with_connection(a_core: ExactMatrix, d2: Vec<Rational>, connection: ExactMatrix) -> Result<Self> {
        if a_core.order() != connection.order() || d2.len() != a_core.order() {
            return Err(Error::DimensionMismatch("coefficient tables disagree in order".into()));
        }
        if !a_core.is_lower_triangular() {
            return Err(Error::InvalidParameter("coefficient core is not lower triangular".into()));
        }
        let c_inv = lower_triangular_inverse(&connection)?;
        let b_core = &a_core * &c_inv;
        Ok(Self { a_core, b_core, connection, d2 })
    }

    /// Extends any system's first `order` rows with a triangular connection `C`.
    pub fn from_system<S: OrthoSystem + ?Sized>(sys: &S, order: usize, connection: ExactMatrix) -> Result<Self> {
        let a = ExactMatrix::from_fn(order, |n, k| if k <= n { sys.a_core(n, k) } else { Ok(ComplexRational::zero()) })?;
        let d2 = (0..order).map(|n| sys.d2(n)).collect::<Result<Vec<_>>>()?;
        Self::with_connection(a, d2, connection)
    }
}

impl OrthoSystem for TableSystem {
    fn connection(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.check_order(n)?;
        Ok(self.connection[(n, k)].clone())
    }

    fn a_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.check_order(n)?;
        Ok(self.a_core[(n, k)].clone())
    }

    fn d2(&self, n: usize) -> Result<Rational> {
        self.check_order(n)?;
        Ok(self.d2[n].clone())
    }

    fn same_uv(&self) -> bool {
        self.connection.is_identity()
    }

    fn b_core(&self, n: usize, k: usize) -> Result<ComplexRational> {
        self.check_order(n)?;
        Ok(self.b_core[(n, k)].clone())
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.a_core.order() - 1)
    }
}
