//! Assembles a [`GramReport`]: closed forms against Bareiss and Gram oracles,
//! bounds against the Sturm enclosure, and optionally the printed variants.

use std::collections::BTreeMap;

use crate::arith::{ComplexRational, Rational};
use crate::error::{Error, Result};
use crate::gram::{
    build_h, cd_bound, closed_dets, connection_matrix, corollary_bound, gram_inverse, matrix_strings, recover_g,
    theorem_bounds, BoundEntry, BoundsReport, Comparison, Enclosure, GramReport,
};
use crate::matrix::smallest_eigenvalue;

use super::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n: usize,
    pub prec: u32,
    /// Overrides the family default.
    pub z0: Option<ComplexRational>,
    pub printed_formulas: bool,
    /// Added to closed-form `γ_{0,0}`; a deliberate fault for mutation testing.
    pub perturb_inverse: Option<Rational>,
}

impl VerifyOptions {
    pub fn new(n: usize, prec: u32) -> Self {
        Self { n, prec, z0: None, printed_formulas: false, perturb_inverse: None }
    }
}

pub fn build_report<F: Family + ?Sized>(family: &F, opts: &VerifyOptions) -> Result<GramReport> {
    let n = opts.n;
    let prec = opts.prec;
    let h = build_h(family, n)?;
    let mut checks = BTreeMap::new();
    let mut warnings = Vec::new();

    match family.entry_matrix(n) {
        Ok(direct) => {
            checks.insert("entries.formula".to_string(), direct == h);
        }
        Err(Error::Unavailable(_)) => {}
        Err(e) => return Err(e),
    }

    let oracle_det = h.bareiss_det();
    let closed_det = family.closed_det(n)?;
    let engine = closed_dets(family, n)?;
    checks.insert("det.engine".to_string(), engine.1 == oracle_det);

    let oracle_inv = h.exact_inverse()?;
    let mut closed_inv = family.closed_inverse(n)?;
    if let Some(delta) = &opts.perturb_inverse {
        closed_inv[(0, 0)] += &ComplexRational::real(delta.clone());
    }
    checks.insert("inverse.engine".to_string(), gram_inverse(family, n)? == oracle_inv);
    checks.insert("inverse.identity".to_string(), (&h * &closed_inv).is_identity());

    if !family.same_uv() {
        let c = connection_matrix(family, n)?;
        let g = recover_g(&h, &c)?;
        checks.insert("recover_g.roundtrip".to_string(), &g * &c.conj_transpose() == h);
        checks.insert("recover_g.det".to_string(), g.bareiss_det() == ComplexRational::real(engine.0.clone()));
    }

    let mut lambda = None;
    let mut bounds = None;
    if family.same_uv() {
        checks.insert("hermitian".to_string(), h.is_hermitian());
        if family.pd_mode(n) {
            checks.insert("positive_definite".to_string(), h.is_positive_definite()?);
            let e = smallest_eigenvalue(&h, prec)?;
            let (b1, b2) = theorem_bounds(family, n, prec)?;
            let z0 = opts.z0.clone().or_else(|| family.default_z0());
            let (corollary, cd) = match &z0 {
                Some(z) => (corollary_bound(family, n, z, prec), cd_bound(family, n, z, prec)),
                None => {
                    let why = "no z0 given and the family has no default";
                    (Err(Error::NotApplicable(why.into())), Err(Error::NotApplicable(why.into())))
                }
            };
            if let (Ok(c), Ok(d)) = (&corollary, &cd) {
                let tol = 2f64.powi(-(prec as i32) / 2);
                checks.insert("cd.matches_corollary".to_string(), d.value.rel_diff(&c.value) <= tol);
            }
            if let Ok(c) = &corollary {
                if !c.certified {
                    warnings.push("sign alignment fails at z0; corollary value is not a certified bound".to_string());
                }
                if c.certified {
                    let exact_b2 = b2.exact.as_ref();
                    checks.insert("corollary.equals_b2".to_string(), exact_b2.is_none_or(|r| *r == c.as_rational()));
                }
            }
            let fam = family.closed_bound(n, prec);
            let entry = |b| BoundEntry::from_result(b, Some(&e));
            let report = BoundsReport {
                b1: BoundEntry::from_bound(&b1, Some(&e)),
                b2: BoundEntry::from_bound(&b2, Some(&e)),
                corollary: entry(&corollary),
                cd: entry(&cd),
                family: entry(&fam),
                certified: false,
            };
            let optional_ok = |b: &BoundEntry| b.value.is_none() || !b.certified || b.below_lambda == Some(true);
            let certified = report.b1.holds()
                && report.b2.holds()
                && report.family.holds()
                && optional_ok(&report.corollary)
                && optional_ok(&report.cd);
            bounds = Some(BoundsReport { certified, ..report });
            lambda = Some(Enclosure::from(&e));
            if n == 0 {
                checks.insert("order0.bound_is_lambda".to_string(), e.is_exact() && b1.as_rational() == e.lo);
            }
        } else {
            warnings.push("parameters outside the positive-definite regime; bounds skipped".to_string());
        }
    }

    let errata = if opts.printed_formulas { family.printed(n, prec)? } else { Vec::new() };

    Ok(GramReport {
        family: family.tag().to_string(),
        n,
        precision: prec,
        entries: matrix_strings(&h),
        det: Comparison { closed: closed_det.to_string(), oracle: oracle_det.to_string(), matches: closed_det == oracle_det },
        inverse: Comparison {
            closed: matrix_strings(&closed_inv),
            oracle: matrix_strings(&oracle_inv),
            matches: closed_inv == oracle_inv,
        },
        bounds,
        lambda_s: lambda,
        errata,
        checks,
        warnings,
    })
}
