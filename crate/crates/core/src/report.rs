//! Report envelopes shared by the CLI and the C ABI: each bundles the
//! computed payload with the field descriptor so every emitted document
//! records which representation produced it.

use crate::cwe::{
    brute_force_outcome, case_label, closed_form_cwe, code_dimension, collapse_to_weights,
    diff_cwe_tables, CodeId, CweTable, TableDiff, WeightDistribution,
};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldDescriptor};
use crate::sums::{
    s_distribution_closed, s_distribution_workers, t_distribution_closed, t_distribution_workers,
    SumDistribution,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumFamily {
    /// One-coefficient sum over x -> Tr(a x^{p^l+1}).
    S,
    /// Two-coefficient sum over x -> Tr(a x^{p^l+1} + b x^2).
    T,
}

impl SumFamily {
    pub fn name(self) -> &'static str {
        match self {
            SumFamily::S => "s",
            SumFamily::T => "t",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldInfoReport {
    pub field: FieldDescriptor,
    pub l: u32,
    pub h1: Vec<u32>,
    pub h1_degree: u32,
    pub h2: Vec<u32>,
    pub h2_degree: u32,
    pub dim_c1: u32,
    pub dim_c2: u32,
}

/// Check-polynomial degrees and the code dimensions they induce.
pub fn field_info_report(ctx: &FieldContext, l: u32) -> Result<FieldInfoReport> {
    if l == 0 || l >= ctx.m() {
        return Err(Error::BadExponent { l, m: ctx.m() });
    }
    let power = i64::from(ctx.p()).pow(l) + 1;
    let h1 = ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -power));
    let h2 = ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -2));
    let report = FieldInfoReport {
        field: FieldDescriptor::from(ctx),
        l,
        h1_degree: h1.len() as u32 - 1,
        h1,
        h2_degree: h2.len() as u32 - 1,
        h2,
        dim_c1: code_dimension(CodeId::C1, ctx.m(), l),
        dim_c2: code_dimension(CodeId::C2, ctx.m(), l),
    };
    assert_eq!(report.dim_c1, report.h1_degree, "dimension claim violated");
    assert_eq!(
        report.dim_c2,
        report.h1_degree + report.h2_degree,
        "dimension claim violated"
    );
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct SumDistReport {
    pub field: FieldDescriptor,
    pub sum: &'static str,
    pub direct: Option<SumDistribution>,
    pub closed: Option<SumDistribution>,
    pub matched: Option<bool>,
}

pub fn sum_dist_report(
    ctx: &FieldContext,
    l: u32,
    family: SumFamily,
    want_direct: bool,
    want_closed: bool,
    budget: u128,
    workers: usize,
) -> Result<SumDistReport> {
    let n = u128::from(ctx.group_order());
    let q = u128::from(ctx.q());
    let evals = match family {
        SumFamily::S => q * n,
        SumFamily::T => q * q * n,
    };
    if want_direct && evals > budget {
        return Err(Error::BudgetExceeded {
            needed: evals,
            budget,
        });
    }
    let direct = if want_direct {
        Some(match family {
            SumFamily::S => s_distribution_workers(ctx, l, workers)?,
            SumFamily::T => t_distribution_workers(ctx, l, workers)?,
        })
    } else {
        None
    };
    let closed = if want_closed {
        Some(match family {
            SumFamily::S => s_distribution_closed(ctx.p(), ctx.m(), l)?,
            SumFamily::T => t_distribution_closed(ctx.p(), ctx.m(), l)?,
        })
    } else {
        None
    };
    let matched = match (&direct, &closed) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(SumDistReport {
        field: FieldDescriptor::from(ctx),
        sum: family.name(),
        direct,
        closed,
        matched,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CweReport {
    pub field: FieldDescriptor,
    pub code: CodeId,
    pub l: u32,
    pub dim: u32,
    pub case: String,
    pub closed: Option<CweTable>,
    pub brute: Option<CweTable>,
    pub matched: Option<bool>,
    pub diffs: Vec<TableDiff>,
    pub weights: WeightDistribution,
    pub min_distance: Option<u32>,
}

pub fn cwe_report(
    ctx: &FieldContext,
    l: u32,
    code: CodeId,
    want_closed: bool,
    want_brute: bool,
    budget: u128,
    workers: usize,
) -> Result<CweReport> {
    assert!(want_closed || want_brute, "at least one method");
    let closed = if want_closed {
        Some(closed_form_cwe(code, ctx.p(), ctx.m(), l)?)
    } else {
        None
    };
    let brute = if want_brute {
        Some(brute_force_outcome(ctx, l, code, budget, workers)?.table)
    } else {
        None
    };
    let (matched, diffs) = match (&closed, &brute) {
        (Some(a), Some(b)) => {
            let (ok, diffs) = diff_cwe_tables(a, b);
            (Some(ok), diffs)
        }
        _ => (None, Vec::new()),
    };
    let shown = closed.as_ref().or(brute.as_ref()).unwrap();
    let weights = collapse_to_weights(shown);
    Ok(CweReport {
        field: FieldDescriptor::from(ctx),
        code,
        l,
        dim: shown.dim,
        case: case_label(code, ctx.m(), l),
        min_distance: weights.min_distance(),
        matched,
        diffs,
        weights,
        closed,
        brute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_info_degrees() {
        let ctx = FieldContext::build(3, 2, None).unwrap();
        let info = field_info_report(&ctx, 1).unwrap();
        assert_eq!(info.h1_degree, 1);
        assert_eq!(info.h2_degree, 2);
        assert_eq!((info.dim_c1, info.dim_c2), (1, 3));

        let ctx = FieldContext::build(3, 3, None).unwrap();
        let info = field_info_report(&ctx, 1).unwrap();
        assert_eq!(info.h1_degree, 3);
        assert_eq!((info.dim_c1, info.dim_c2), (3, 6));
    }

    #[test]
    fn field_info_rejects_bad_l() {
        let ctx = FieldContext::build(3, 2, None).unwrap();
        assert_eq!(
            field_info_report(&ctx, 2).unwrap_err(),
            Error::BadExponent { l: 2, m: 2 }
        );
    }

    #[test]
    fn reports_compose() {
        let ctx = FieldContext::build(3, 3, None).unwrap();
        let dist = sum_dist_report(&ctx, 1, SumFamily::T, true, true, u128::MAX, 1).unwrap();
        assert_eq!(dist.matched, Some(true));
        let cwe = cwe_report(&ctx, 1, CodeId::C2, true, true, u128::MAX, 1).unwrap();
        assert_eq!(cwe.matched, Some(true));
        assert_eq!(cwe.min_distance, Some(12));
    }
}
