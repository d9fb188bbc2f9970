//! C ABI over the cwenum library.
//!
//! Conventions: every fallible entry point returns a `CwenumStatus`;
//! results are UTF-8 JSON strings allocated here and released with
//! `cwenum_string_free`; fields are opaque handles built once and shared
//! freely (the underlying tables are immutable, so a handle may be used
//! from several threads at the same time). Panics are caught at the
//! boundary and surfaced as `CWENUM_STATUS_INTERNAL`.

use cwenum::cwe::{verify_with, CodeId, VerifyOptions, DEFAULT_ORACLE_BUDGET};
use cwenum::report::{cwe_report, field_info_report, sum_dist_report, SumFamily};
use cwenum::{Error, FieldContext};
use serde::Serialize;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwenumStatus {
    Ok = 0,
    NullArgument = 1,
    NotPrime = 2,
    NotPrimitive = 3,
    CapExceeded = 4,
    MixedPrimes = 5,
    BadExponent = 6,
    DegenerateQuadratic = 7,
    UnclassifiedSumValue = 8,
    NonIntegralComposition = 9,
    BudgetExceeded = 10,
    DegeneracyMismatch = 11,
    NotBilinear = 12,
    InvalidArgument = 13,
    Internal = 14,
}

/// Code family selector.
pub const CWENUM_CODE_C1: u32 = 1;
/// Code family selector.
pub const CWENUM_CODE_C2: u32 = 2;
/// Compute the closed form only.
pub const CWENUM_METHOD_CLOSED: u32 = 0;
/// Compute the enumeration oracle only.
pub const CWENUM_METHOD_BRUTE: u32 = 1;
/// Compute both and include the comparison in the result.
pub const CWENUM_METHOD_BOTH: u32 = 2;
/// One-coefficient sum family.
pub const CWENUM_SUM_S: u32 = 0;
/// Two-coefficient sum family.
pub const CWENUM_SUM_T: u32 = 1;

/// Opaque handle to a built field.
pub struct CwenumField {
    inner: FieldContext,
}

fn status_of(e: &Error) -> CwenumStatus {
    match e {
        Error::NotPrime(_) => CwenumStatus::NotPrime,
        Error::NotPrimitive(..) => CwenumStatus::NotPrimitive,
        Error::CapExceeded { .. } => CwenumStatus::CapExceeded,
        Error::MixedPrimes(..) => CwenumStatus::MixedPrimes,
        Error::BadExponent { .. } => CwenumStatus::BadExponent,
        Error::DegenerateQuadratic => CwenumStatus::DegenerateQuadratic,
        Error::UnclassifiedSumValue(_) => CwenumStatus::UnclassifiedSumValue,
        Error::NonIntegralComposition { .. } => CwenumStatus::NonIntegralComposition,
        Error::BudgetExceeded { .. } => CwenumStatus::BudgetExceeded,
        Error::DegeneracyMismatch { .. } => CwenumStatus::DegeneracyMismatch,
        Error::NotBilinear(_) => CwenumStatus::NotBilinear,
    }
}

fn effective_budget(budget: u64) -> u128 {
    if budget == 0 {
        DEFAULT_ORACLE_BUDGET
    } else {
        u128::from(budget)
    }
}

fn effective_workers(workers: u32) -> usize {
    workers.max(1) as usize
}

fn parse_code(code: u32) -> Option<CodeId> {
    match code {
        CWENUM_CODE_C1 => Some(CodeId::C1),
        CWENUM_CODE_C2 => Some(CodeId::C2),
        _ => None,
    }
}

fn parse_family(family: u32) -> Option<SumFamily> {
    match family {
        CWENUM_SUM_S => Some(SumFamily::S),
        CWENUM_SUM_T => Some(SumFamily::T),
        _ => None,
    }
}

/// (want_closed, want_brute) for a method selector.
fn parse_method(method: u32) -> Option<(bool, bool)> {
    match method {
        CWENUM_METHOD_CLOSED => Some((true, false)),
        CWENUM_METHOD_BRUTE => Some((false, true)),
        CWENUM_METHOD_BOTH => Some((true, true)),
        _ => None,
    }
}

/// # Safety
/// `out_json` must be a valid pointer.
unsafe fn write_json<T: Serialize>(value: &T, out_json: *mut *mut c_char) -> CwenumStatus {
    let json = match serde_json::to_string(value) {
        Ok(j) => j,
        Err(_) => return CwenumStatus::Internal,
    };
    match CString::new(json) {
        Ok(cstr) => {
            unsafe { *out_json = cstr.into_raw() };
            CwenumStatus::Ok
        }
        Err(_) => CwenumStatus::Internal,
    }
}

unsafe fn write_string(s: String, out: *mut *mut c_char) -> CwenumStatus {
    match CString::new(s) {
        Ok(cstr) => {
            unsafe { *out = cstr.into_raw() };
            CwenumStatus::Ok
        }
        Err(_) => CwenumStatus::Internal,
    }
}

fn guarded(body: impl FnOnce() -> CwenumStatus) -> CwenumStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(CwenumStatus::Internal)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cwenum_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => unreachable!(),
    };
    VERSION.as_ptr()
}

/// Builds F_{p^m}. `poly`, when non-null with `poly_len == m + 1`, is the
/// full coefficient vector (constant term first, leading 1) of a monic
/// primitive polynomial override. `cap = 0` selects the default field
/// size cap of 2^22 elements.
///
/// # Safety
/// `out_field` must be valid; `poly` must point to `poly_len` readable
/// u32 values when non-null.
#[no_mangle]
pub unsafe extern "C" fn cwenum_field_build(
    p: u32,
    m: u32,
    poly: *const u32,
    poly_len: usize,
    cap: u64,
    out_field: *mut *mut CwenumField,
) -> CwenumStatus {
    if out_field.is_null() {
        return CwenumStatus::NullArgument;
    }
    if m == 0 {
        return CwenumStatus::InvalidArgument;
    }
    let override_vec: Option<Vec<u32>> = if poly.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(poly, poly_len) }.to_vec())
    };
    guarded(|| {
        let cap = if cap == 0 {
            cwenum::DEFAULT_FIELD_CAP
        } else {
            cap
        };
        match FieldContext::build_capped(p, m, override_vec.as_deref(), cap) {
            Ok(inner) => {
                let handle = Box::new(CwenumField { inner });
                unsafe { *out_field = Box::into_raw(handle) };
                CwenumStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a field handle. Null is a no-op.
///
/// # Safety
/// `field` must have come from `cwenum_field_build` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cwenum_field_free(field: *mut CwenumField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Field descriptor, check-polynomial degrees and code dimensions as JSON.
///
/// # Safety
/// `field` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cwenum_field_info_json(
    field: *const CwenumField,
    l: u32,
    out_json: *mut *mut c_char,
) -> CwenumStatus {
    let (Some(field), false) = (unsafe { field.as_ref() }, out_json.is_null()) else {
        return CwenumStatus::NullArgument;
    };
    guarded(|| match field_info_report(&field.inner, l) {
        Ok(report) => unsafe { write_json(&report, out_json) },
        Err(e) => status_of(&e),
    })
}

/// Sum value distribution as JSON. `family` is CWENUM_SUM_S or
/// CWENUM_SUM_T; `method` selects direct sweep, closed form, or both.
///
/// # Safety
/// `field` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cwenum_sum_dist_json(
    field: *const CwenumField,
    l: u32,
    family: u32,
    method: u32,
    budget: u64,
    workers: u32,
    out_json: *mut *mut c_char,
) -> CwenumStatus {
    let (Some(field), false) = (unsafe { field.as_ref() }, out_json.is_null()) else {
        return CwenumStatus::NullArgument;
    };
    let (Some(family), Some((want_closed, want_brute))) =
        (parse_family(family), parse_method(method))
    else {
        return CwenumStatus::InvalidArgument;
    };
    guarded(|| {
        match sum_dist_report(
            &field.inner,
            l,
            family,
            want_brute,
            want_closed,
            effective_budget(budget),
            effective_workers(workers),
        ) {
            Ok(report) => unsafe { write_json(&report, out_json) },
            Err(e) => status_of(&e),
        }
    })
}

/// Complete weight enumerator report as JSON. `code` is CWENUM_CODE_C1 or
/// CWENUM_CODE_C2.
///
/// # Safety
/// `field` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cwenum_cwe_json(
    field: *const CwenumField,
    l: u32,
    code: u32,
    method: u32,
    budget: u64,
    workers: u32,
    out_json: *mut *mut c_char,
) -> CwenumStatus {
    let (Some(field), false) = (unsafe { field.as_ref() }, out_json.is_null()) else {
        return CwenumStatus::NullArgument;
    };
    let (Some(code), Some((want_closed, want_brute))) = (parse_code(code), parse_method(method))
    else {
        return CwenumStatus::InvalidArgument;
    };
    guarded(|| {
        match cwe_report(
            &field.inner,
            l,
            code,
            want_closed,
            want_brute,
            effective_budget(budget),
            effective_workers(workers),
        ) {
            Ok(report) => unsafe { write_json(&report, out_json) },
            Err(e) => status_of(&e),
        }
    })
}

/// The monomial text rendering of one table (closed form unless `method`
/// is CWENUM_METHOD_BRUTE).
///
/// # Safety
/// `field` must be a live handle; `out_text` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cwenum_cwe_monomial_text(
    field: *const CwenumField,
    l: u32,
    code: u32,
    method: u32,
    budget: u64,
    workers: u32,
    out_text: *mut *mut c_char,
) -> CwenumStatus {
    let (Some(field), false) = (unsafe { field.as_ref() }, out_text.is_null()) else {
        return CwenumStatus::NullArgument;
    };
    let (Some(code), Some((want_closed, want_brute))) = (parse_code(code), parse_method(method))
    else {
        return CwenumStatus::InvalidArgument;
    };
    guarded(|| {
        match cwe_report(
            &field.inner,
            l,
            code,
            want_closed,
            want_brute,
            effective_budget(budget),
            effective_workers(workers),
        ) {
            Ok(report) => {
                let table = report.closed.as_ref().or(report.brute.as_ref()).unwrap();
                unsafe { write_string(table.monomial_text(), out_text) }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Cross-validates the closed form against the enumeration oracle for the
/// handle's field parameters and primitive polynomial. `out_matched`
/// receives 1 on a full match and 0 otherwise.
///
/// # Safety
/// `field` must be a live handle; `out_matched` and `out_json` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn cwenum_verify_json(
    field: *const CwenumField,
    l: u32,
    code: u32,
    budget: u64,
    workers: u32,
    out_matched: *mut i32,
    out_json: *mut *mut c_char,
) -> CwenumStatus {
    let (Some(field), false, false) = (
        unsafe { field.as_ref() },
        out_matched.is_null(),
        out_json.is_null(),
    ) else {
        return CwenumStatus::NullArgument;
    };
    let Some(code) = parse_code(code) else {
        return CwenumStatus::InvalidArgument;
    };
    guarded(|| {
        let opts = VerifyOptions {
            budget: effective_budget(budget),
            workers: effective_workers(workers),
            poly_override: Some(field.inner.prim_poly().to_vec()),
            ..VerifyOptions::default()
        };
        match verify_with(field.inner.p(), field.inner.m(), l, code, &opts) {
            Ok(report) => {
                unsafe { *out_matched = i32::from(report.matched) };
                unsafe { write_json(&report, out_json) }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cwenum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static name for a status code; never null, do not free.
#[no_mangle]
pub extern "C" fn cwenum_status_name(status: i32) -> *const c_char {
    let name: &'static CStr = match status {
        0 => c"ok",
        1 => c"null argument",
        2 => c"not an odd prime",
        3 => c"polynomial is not primitive",
        4 => c"field size cap exceeded",
        5 => c"mixed cyclotomic primes",
        6 => c"exponent parameter out of range",
        7 => c"degenerate quadratic",
        8 => c"sum value outside the classified set",
        9 => c"non-integral composition",
        10 => c"evaluation budget exceeded",
        11 => c"degeneracy mismatch",
        12 => c"evaluator is not a quadratic form",
        13 => c"invalid argument",
        14 => c"internal error",
        _ => c"unknown status",
    };
    name.as_ptr()
}
