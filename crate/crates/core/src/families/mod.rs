//! The concrete matrix families, each with an entry formula, orthonormal
//! coefficient generators and closed forms that are checked against the
//! Gram engine and exact elimination.

pub mod askey;
pub mod gmuntz;
pub mod lommel;
pub mod muntz;
pub mod synthetic;
pub mod verify;

use num_traits::Zero;

use crate::arith::{ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::gram::{Bound, Erratum, OrthoSystem};
use crate::matrix::ExactMatrix;

pub use askey::{Askey, AskeyParams};
pub use gmuntz::{GenMuntz, GenMuntzParams};
pub use lommel::{lommel_h_coeff, Lommel, LommelParams};
pub use muntz::{Muntz, MuntzParams};
pub use synthetic::Synthetic;
pub use verify::{build_report, VerifyOptions};

/// What the command line and the acceptance grid need from every family.
pub trait Family: OrthoSystem + Send + Sync {
    fn tag(&self) -> &'static str;

    /// Direct entry formula `H_{j,k}`, when the family has one.
    fn entry(&self, j: usize, k: usize) -> Result<Option<ComplexRational>>;

    fn closed_det(&self, n: usize) -> Result<ComplexRational>;

    fn closed_inverse_entry(&self, n: usize, j: usize, k: usize) -> Result<ComplexRational>;

    /// The family's own eigenvalue bound; `NotApplicable` when there is none.
    fn closed_bound(&self, n: usize, prec: u32) -> Result<Bound>;

    /// Sufficient conditions for `H_n` to be positive definite.
    fn pd_mode(&self, n: usize) -> bool;

    fn default_z0(&self) -> Option<ComplexRational>;

    /// Verbatim printed variants evaluated next to the implemented forms.
    fn printed(&self, _n: usize, _prec: u32) -> Result<Vec<Erratum>> {
        Ok(Vec::new())
    }

    fn closed_inverse(&self, n: usize) -> Result<ExactMatrix> {
        ExactMatrix::from_fn(n + 1, |j, k| self.closed_inverse_entry(n, j, k))
    }

    /// `H_n` from the entry formula; `Unavailable` for moment families without one.
    fn entry_matrix(&self, n: usize) -> Result<ExactMatrix> {
        ExactMatrix::from_fn(n + 1, |j, k| {
            self.entry(j, k)?.ok_or_else(|| Error::Unavailable(format!("{} has no direct entry formula", self.tag())))
        })
    }
}

pub(crate) fn ratio(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        Err(Error::ZeroDenominator(what.to_string()))
    } else {
        Ok(num / den)
    }
}

pub(crate) fn cratio(num: &ComplexRational, den: &ComplexRational, what: &str) -> Result<ComplexRational> {
    if den.is_zero() {
        Err(Error::ZeroDenominator(what.to_string()))
    } else {
        num.checked_div(den)
    }
}

pub(crate) fn check_distinct(alphas: &[ComplexRational]) -> Result<()> {
    for j in 0..alphas.len() {
        for k in 0..j {
            if alphas[j] == alphas[k] {
                return Err(Error::InvalidParameter(format!("alpha_{k} = alpha_{j} = {}", alphas[j])));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_nonempty(alphas: &[ComplexRational]) -> Result<()> {
    if alphas.is_empty() {
        Err(Error::InvalidParameter("at least one exponent is required".into()))
    } else {
        Ok(())
    }
}

/// Compares a printed formula with the implemented one and renders both.
pub(crate) fn erratum<T: PartialEq + ToString>(formula: &str, printed: &T, corrected: &T) -> Erratum {
    Erratum {
        formula: formula.to_string(),
        printed: printed.to_string(),
        corrected: corrected.to_string(),
        matches: printed == corrected,
    }
}

/// Matrix-valued variant of [`erratum`]; rendered as `[[..],[..]]`.
pub(crate) fn matrix_erratum(formula: &str, printed: &Result<ExactMatrix>, corrected: &ExactMatrix) -> Erratum {
    let render = |m: &ExactMatrix| {
        let rows: Vec<String> =
            m.rows().map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))).collect();
        format!("[{}]", rows.join(","))
    };
    match printed {
        Ok(p) => Erratum {
            formula: formula.to_string(),
            printed: render(p),
            corrected: render(corrected),
            matches: p == corrected,
        },
        Err(e) => Erratum {
            formula: formula.to_string(),
            printed: format!("error: {e}"),
            corrected: render(corrected),
            matches: false,
        },
    }
}

/// Renders a bound's exact value if known, else its rounded-down decimal.
pub(crate) fn bound_text(b: &Bound) -> String {
    match &b.exact {
        Some(r) => r.to_string(),
        None => b.value.to_string(),
    }
}

pub(crate) fn bound_erratum(formula: &str, printed: &Result<Bound>, corrected: &Result<Bound>) -> Erratum {
    let text = |b: &Result<Bound>| match b {
        Ok(b) => bound_text(b),
        Err(e) => format!("error: {e}"),
    };
    let matches = match (printed, corrected) {
        (Ok(p), Ok(c)) => match (&p.exact, &c.exact) {
            (Some(x), Some(y)) => x == y,
            _ => p.value == c.value,
        },
        _ => false,
    };
    Erratum { formula: formula.to_string(), printed: text(printed), corrected: text(corrected), matches }
}
