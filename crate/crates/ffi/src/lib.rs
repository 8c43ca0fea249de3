//! C ABI over `invmult`.
//!
//! Objects cross the boundary as opaque pointers created by `*_new`/`*_parse`
//! style functions and released by the matching `*_free`. Every fallible call
//! returns an [`InvmultStatus`]; on failure the message is available from
//! [`invmult_last_error`] on the same thread. Strings handed out by the
//! library are owned by the caller and released with [`invmult_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_rational::BigRational;

use invmult::dist::{marginal_i_pmf, moments_of_i, rational_to_f64, AnyProbVector, Probability};
use invmult::io::{marginal_to_json, Render};
use invmult::qcomb::{
    count_inversions_in, gaussian_multinomial, Composition, IntPolynomial, OutcomeSequence,
};
use invmult::stats::h_statistic;
use invmult::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvmultStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Budget = 4,
    OutOfRange = 5,
    Utf8 = 6,
    Panic = 7,
}

/// q-multinomial coefficient of a count vector.
pub struct InvmultPoly {
    poly: IntPolynomial,
}

/// Probability vector, exact or floating depending on how it was parsed.
pub struct InvmultProbs {
    probs: AnyProbVector,
}

/// Marginal pmf of the inversion number.
pub struct InvmultPmf {
    n: u32,
    k: usize,
    values: PmfValues,
}

enum PmfValues {
    Rational(Vec<BigRational>),
    Floating(Vec<f64>),
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: InvmultStatus, msg: impl Into<String>) -> InvmultStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> InvmultStatus {
    let status = match &e {
        Error::Parse(_) => InvmultStatus::Parse,
        Error::CategoryOutOfRange { .. } | Error::SymbolOutOfRange { .. } => {
            InvmultStatus::OutOfRange
        }
        e if e.is_resource_refusal() => InvmultStatus::Budget,
        _ => InvmultStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> InvmultStatus) -> InvmultStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(InvmultStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, InvmultStatus> {
    if text.is_null() {
        return Err(fail(InvmultStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(InvmultStatus::Utf8, e.to_string()))
}

unsafe fn read_slice<'a, T>(data: *const T, len: usize) -> Result<&'a [T], InvmultStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(InvmultStatus::NullPointer, "null array"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> InvmultStatus {
    let c = CString::new(s).expect("library strings contain no nul");
    *out = c.into_raw();
    InvmultStatus::Ok
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(InvmultStatus::NullPointer, concat!("null argument: ", stringify!($p)));
        })+
    };
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn invmult_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn invmult_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn invmult_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Inversion number of `symbols[0..len]`, each in `1..=k`.
#[no_mangle]
pub unsafe extern "C" fn invmult_count_inversions(
    symbols: *const u32,
    len: usize,
    k: usize,
    out: *mut u64,
) -> InvmultStatus {
    guard(|| {
        non_null!(out);
        let s = match read_slice(symbols, len) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match OutcomeSequence::new(s.to_vec(), k) {
            Ok(_) => {
                *out = count_inversions_in(s, k);
                InvmultStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// `H` statistic of `symbols[0..len]`. `*defined` is false (and `*out` left
/// at 0) when every symbol is the same category.
#[no_mangle]
pub unsafe extern "C" fn invmult_h_statistic(
    symbols: *const u32,
    len: usize,
    k: usize,
    out: *mut f64,
    defined: *mut bool,
) -> InvmultStatus {
    guard(|| {
        non_null!(out, defined);
        let s = match read_slice(symbols, len) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match OutcomeSequence::new(s.to_vec(), k) {
            Ok(seq) => {
                let h = h_statistic(&seq);
                *defined = h.is_some();
                *out = h.as_ref().map_or(0.0, rational_to_f64);
                InvmultStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// q-multinomial coefficient of the count vector `parts[0..k]`.
#[no_mangle]
pub unsafe extern "C" fn invmult_poly_new(
    parts: *const u32,
    k: usize,
    out: *mut *mut InvmultPoly,
) -> InvmultStatus {
    guard(|| {
        non_null!(out);
        let parts = match read_slice(parts, k) {
            Ok(p) => p,
            Err(status) => return status,
        };
        match Composition::new(parts.to_vec()) {
            Ok(y) => {
                let poly = gaussian_multinomial(&y);
                *out = Box::into_raw(Box::new(InvmultPoly { poly }));
                InvmultStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn invmult_poly_free(poly: *mut InvmultPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of the polynomial (the maximum inversion count).
#[no_mangle]
pub unsafe extern "C" fn invmult_poly_degree(
    poly: *const InvmultPoly,
    out: *mut u64,
) -> InvmultStatus {
    guard(|| {
        non_null!(poly, out);
        *out = (*poly).poly.degree().unwrap_or(0) as u64;
        InvmultStatus::Ok
    })
}

/// Coefficient of `q^power` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn invmult_poly_coeff(
    poly: *const InvmultPoly,
    power: usize,
    out: *mut *mut c_char,
) -> InvmultStatus {
    guard(|| {
        non_null!(poly, out);
        write_string(out, (*poly).poly.coeff(power).to_string())
    })
}

/// `1 + 2q + 2q^2 + q^3` style rendering.
#[no_mangle]
pub unsafe extern "C" fn invmult_poly_to_string(
    poly: *const InvmultPoly,
    out: *mut *mut c_char,
) -> InvmultStatus {
    guard(|| {
        non_null!(poly, out);
        write_string(out, (*poly).poly.to_string())
    })
}

/// Parses `"1/2,1/3,1/6"` (exact) or `"0.5,0.3,0.2"` (floating).
#[no_mangle]
pub unsafe extern "C" fn invmult_probs_parse(
    text: *const c_char,
    out: *mut *mut InvmultProbs,
) -> InvmultStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match AnyProbVector::parse(text) {
            Ok(probs) => {
                *out = Box::into_raw(Box::new(InvmultProbs { probs }));
                InvmultStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn invmult_probs_free(probs: *mut InvmultProbs) {
    if !probs.is_null() {
        drop(Box::from_raw(probs));
    }
}

/// Number of categories.
#[no_mangle]
pub unsafe extern "C" fn invmult_probs_k(probs: *const InvmultProbs) -> usize {
    if probs.is_null() {
        0
    } else {
        (*probs).probs.k()
    }
}

/// True when the vector was parsed as exact rationals.
#[no_mangle]
pub unsafe extern "C" fn invmult_probs_is_exact(probs: *const InvmultProbs) -> bool {
    !probs.is_null() && matches!((*probs).probs, AnyProbVector::Rational(_))
}

/// `E(I)`, `E(I^2)` and `V(I)` for `n` trials, as doubles.
#[no_mangle]
pub unsafe extern "C" fn invmult_moments(
    probs: *const InvmultProbs,
    n: u32,
    e_i: *mut f64,
    e_i2: *mut f64,
    v_i: *mut f64,
) -> InvmultStatus {
    guard(|| {
        non_null!(probs, e_i, e_i2, v_i);
        let (a, b, c) = match &(*probs).probs {
            AnyProbVector::Rational(p) => {
                let m = moments_of_i(n, p);
                (m.e_i.as_f64(), m.e_i2.as_f64(), m.v_i.as_f64())
            }
            AnyProbVector::Floating(p) => {
                let m = moments_of_i(n, p);
                (m.e_i, m.e_i2, m.v_i)
            }
        };
        *e_i = a;
        *e_i2 = b;
        *v_i = c;
        InvmultStatus::Ok
    })
}

/// Marginal pmf of `I` for `n` trials.
#[no_mangle]
pub unsafe extern "C" fn invmult_pmf_new(
    probs: *const InvmultProbs,
    n: u32,
    out: *mut *mut InvmultPmf,
) -> InvmultStatus {
    guard(|| {
        non_null!(probs, out);
        let probs = &(*probs).probs;
        let values = match probs {
            AnyProbVector::Rational(p) => PmfValues::Rational(marginal_i_pmf(n, p)),
            AnyProbVector::Floating(p) => PmfValues::Floating(marginal_i_pmf(n, p)),
        };
        *out = Box::into_raw(Box::new(InvmultPmf {
            n,
            k: probs.k(),
            values,
        }));
        InvmultStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn invmult_pmf_free(pmf: *mut InvmultPmf) {
    if !pmf.is_null() {
        drop(Box::from_raw(pmf));
    }
}

/// Number of entries, indexed `0..len`.
#[no_mangle]
pub unsafe extern "C" fn invmult_pmf_len(pmf: *const InvmultPmf) -> usize {
    if pmf.is_null() {
        return 0;
    }
    match &(*pmf).values {
        PmfValues::Rational(v) => v.len(),
        PmfValues::Floating(v) => v.len(),
    }
}

/// `P(I = i)` as a double.
#[no_mangle]
pub unsafe extern "C" fn invmult_pmf_value(
    pmf: *const InvmultPmf,
    i: usize,
    out: *mut f64,
) -> InvmultStatus {
    guard(|| {
        non_null!(pmf, out);
        let v = match &(*pmf).values {
            PmfValues::Rational(v) => v.get(i).map(Probability::as_f64),
            PmfValues::Floating(v) => v.get(i).copied(),
        };
        match v {
            Some(v) => {
                *out = v;
                InvmultStatus::Ok
            }
            None => fail(
                InvmultStatus::OutOfRange,
                format!("index {i} outside the pmf"),
            ),
        }
    })
}

/// `P(I = i)` as text: `a/b` for exact pmfs, shortest round-trip decimal
/// otherwise.
#[no_mangle]
pub unsafe extern "C" fn invmult_pmf_value_string(
    pmf: *const InvmultPmf,
    i: usize,
    out: *mut *mut c_char,
) -> InvmultStatus {
    guard(|| {
        non_null!(pmf, out);
        let v = match &(*pmf).values {
            PmfValues::Rational(v) => v.get(i).map(|x| x.render(0)),
            PmfValues::Floating(v) => v.get(i).map(|x| x.to_string()),
        };
        match v {
            Some(v) => write_string(out, v),
            None => fail(
                InvmultStatus::OutOfRange,
                format!("index {i} outside the pmf"),
            ),
        }
    })
}

/// JSON document `{"n", "k", "mode", "pmf": [{"i", "p"}, ...]}`.
#[no_mangle]
pub unsafe extern "C" fn invmult_pmf_to_json(
    pmf: *const InvmultPmf,
    out: *mut *mut c_char,
) -> InvmultStatus {
    guard(|| {
        non_null!(pmf, out);
        let pmf = &*pmf;
        let doc = match &pmf.values {
            PmfValues::Rational(v) => marginal_to_json(pmf.n, pmf.k, v),
            PmfValues::Floating(v) => marginal_to_json(pmf.n, pmf.k, v),
        };
        write_string(out, doc.to_string())
    })
}
