use std::collections::BTreeMap;

use serde::Serialize;

use super::bounds::Bound;
use crate::arith::rational::format_rational;
use crate::arith::{BigFloat, Round};
use crate::error::Result;
use crate::matrix::{EigenEnclosure, ExactMatrix};

/// Closed form against oracle, both as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison<T> {
    pub closed: T,
    pub oracle: T,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    /// Decimal value rounded down, or absent when the bound could not be formed.
    pub value: Option<String>,
    pub exact: Option<String>,
    pub certified: bool,
    /// `value ≤ λ_s` as checked against the Sturm enclosure.
    pub below_lambda: Option<bool>,
    pub note: Option<String>,
}

impl BoundEntry {
    pub fn from_bound(b: &Bound, lambda: Option<&EigenEnclosure>) -> Self {
        let digits = BigFloat::decimal_digits(b.value.precision());
        Self {
            value: Some(b.value.to_decimal(digits, Round::Down)),
            exact: b.exact.as_ref().map(format_rational),
            certified: b.certified,
            below_lambda: lambda.map(|e| e.certifies_lower_bound(&b.as_rational())),
            note: None,
        }
    }

    pub fn from_result(r: &Result<Bound>, lambda: Option<&EigenEnclosure>) -> Self {
        match r {
            Ok(b) => Self::from_bound(b, lambda),
            Err(e) => Self::missing(e.to_string()),
        }
    }

    pub fn missing(note: impl Into<String>) -> Self {
        Self { value: None, exact: None, certified: false, below_lambda: None, note: Some(note.into()) }
    }

    /// Present and certified, and not contradicted by the enclosure.
    pub fn holds(&self) -> bool {
        self.value.is_some() && self.certified && self.below_lambda != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub b1: BoundEntry,
    pub b2: BoundEntry,
    pub corollary: BoundEntry,
    pub cd: BoundEntry,
    /// The family's own closed-form bound.
    pub family: BoundEntry,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
    pub value: String,
}

impl From<&EigenEnclosure> for Enclosure {
    fn from(e: &EigenEnclosure) -> Self {
        let digits = BigFloat::decimal_digits(e.value.precision());
        Self { lo: format_rational(&e.lo), hi: format_rational(&e.hi), value: e.value.to_decimal(digits, Round::Nearest) }
    }
}

/// A verbatim formula evaluated next to the implemented one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub formula: String,
    pub printed: String,
    pub corrected: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramReport {
    pub family: String,
    pub n: usize,
    pub precision: u32,
    pub entries: Vec<Vec<String>>,
    pub det: Comparison<String>,
    pub inverse: Comparison<Vec<Vec<String>>>,
    pub bounds: Option<BoundsReport>,
    pub lambda_s: Option<Enclosure>,
    pub errata: Vec<Erratum>,
    /// Additional identities checked exactly (name, outcome).
    /// Named internal consistency checks; all must hold for [`GramReport::passed`].
    pub checks: BTreeMap<String, bool>,
    pub warnings: Vec<String>,
}

impl GramReport {
    /// Every implemented closed form matched and every bound certified.
    pub fn passed(&self) -> bool {
        self.det.matches
            && self.inverse.matches
            && self.checks.values().all(|ok| *ok)
            && self.bounds.as_ref().is_none_or(|b| b.certified)
    }
}

pub fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    m.rows().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}
