//! C ABI over the weyltoric engine.
//!
//! Conventions: every constructor returns its result through an out
//! pointer and reports a [`WtStatus`]; `WT_STATUS_OK` is zero. Handles are
//! opaque and freed with their matching `_free` function; strings returned
//! through out pointers are NUL-terminated, owned by the caller, and freed
//! with `wt_string_free`. On any non-OK status a thread-local message is
//! available through `wt_last_error`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::str::FromStr;

use libc::c_char;

use weyltoric::error::Error;
use weyltoric::fourier::{self, ReflectionSpec};
use weyltoric::realization::{build_realization, Realization, Symbol};
use weyltoric::report::{self, RunConfig};
use weyltoric::rings::RingSpec;
use weyltoric::weyl::{commutator, product, WeylElement};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WtStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    RankMismatch = 4,
    LaurentViolation = 5,
    OddTwist = 6,
    InvalidArgument = 7,
    SuiteFailure = 8,
    InternalError = 9,
}

/// Ring selector for membership tests.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WtRingKind {
    SingularX = 0,
    ResolutionX = 1,
    WeightedY = 2,
}

/// Opaque Weyl-algebra element.
pub struct WtElement(WeylElement);

/// Opaque generator realization.
pub struct WtRealization(Realization);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> WtStatus {
    match err {
        Error::RankMismatch(..) | Error::LengthMismatch { .. } => WtStatus::RankMismatch,
        Error::LaurentViolation { .. }
        | Error::NegativePExponent { .. }
        | Error::LaurentInReflectedIndex => WtStatus::LaurentViolation,
        Error::OddTwist(_) => WtStatus::OddTwist,
        Error::Parse(_) => WtStatus::ParseError,
        Error::RankTooSmall(_) | Error::NotInModule(_) | Error::Config(_) => {
            WtStatus::InvalidArgument
        }
        Error::Io(_) | Error::Json(_) => WtStatus::InternalError,
    }
}

fn fail(err: Error) -> WtStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, WtStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(WtStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        WtStatus::InvalidUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> WtStatus {
    let Ok(c) = CString::new(s) else {
        set_error("string contains an interior NUL");
        return WtStatus::InternalError;
    };
    unsafe { *out = c.into_raw() };
    WtStatus::Ok
}

fn give_element(el: WeylElement, out: *mut *mut WtElement) -> WtStatus {
    unsafe { *out = Box::into_raw(Box::new(WtElement(el))) };
    WtStatus::Ok
}

macro_rules! nonnull {
    ($ptr:expr) => {
        if $ptr.is_null() {
            set_error("null argument");
            return WtStatus::NullArgument;
        }
    };
}

/// Copies the message of the most recent error on this thread.
///
/// # Safety
/// `out` must be a valid pointer; the returned string is freed with
/// `wt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wt_last_error(out: *mut *mut c_char) -> WtStatus {
    nonnull!(out);
    let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
    *out = msg.into_raw();
    WtStatus::Ok
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the canonical text form `c * Q^[..] P^[..] + ...` at the given
/// rank; `laurent` permits negative exponents in the last position.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_element_parse(
    text: *const c_char,
    rank: usize,
    laurent: bool,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(out);
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match WeylElement::parse(text, rank, laurent) {
        Ok(el) => give_element(el, out),
        Err(e) => fail(e),
    }
}

/// Parses the JSON form `{rank, laurent, terms: [{coeff, mu, nu}]}`.
///
/// # Safety
/// As for `wt_element_parse`.
#[no_mangle]
pub unsafe extern "C" fn wt_element_from_json(
    json: *const c_char,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(out);
    let json = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match serde_json::from_str::<WeylElement>(json) {
        Ok(el) => give_element(el, out),
        Err(e) => {
            set_error(&e.to_string());
            WtStatus::ParseError
        }
    }
}

/// Renders the canonical text form (bit-exact round trip with
/// `wt_element_parse`).
///
/// # Safety
/// `el` must be a live element handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_element_to_text(
    el: *const WtElement,
    out: *mut *mut c_char,
) -> WtStatus {
    nonnull!(el);
    nonnull!(out);
    give_string((*el).0.to_string(), out)
}

/// Renders the JSON form.
///
/// # Safety
/// As for `wt_element_to_text`.
#[no_mangle]
pub unsafe extern "C" fn wt_element_to_json(
    el: *const WtElement,
    out: *mut *mut c_char,
) -> WtStatus {
    nonnull!(el);
    nonnull!(out);
    match serde_json::to_string(&(*el).0) {
        Ok(s) => give_string(s, out),
        Err(e) => {
            set_error(&e.to_string());
            WtStatus::InternalError
        }
    }
}

/// # Safety
/// `el` must be a live element handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_element_clone(
    el: *const WtElement,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(el);
    nonnull!(out);
    give_element((*el).0.clone(), out)
}

/// # Safety
/// `el` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wt_element_free(el: *mut WtElement) {
    if !el.is_null() {
        drop(Box::from_raw(el));
    }
}

/// Ambient rank `n` (the element lives on `n + 1` variables); 0 for null.
///
/// # Safety
/// `el` must be a live element handle or null.
#[no_mangle]
pub unsafe extern "C" fn wt_element_rank(el: *const WtElement) -> usize {
    if el.is_null() {
        0
    } else {
        (*el).0.rank()
    }
}

/// Number of normal-ordered terms; 0 for null or zero elements.
///
/// # Safety
/// `el` must be a live element handle or null.
#[no_mangle]
pub unsafe extern "C" fn wt_element_num_terms(el: *const WtElement) -> usize {
    if el.is_null() {
        0
    } else {
        (*el).0.num_terms()
    }
}

/// # Safety
/// `a`, `b` must be live element handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_element_add(
    a: *const WtElement,
    b: *const WtElement,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(a);
    nonnull!(b);
    nonnull!(out);
    match (*a).0.checked_add(&(*b).0) {
        Ok(el) => give_element(el, out),
        Err(e) => fail(e),
    }
}

/// Normal-ordered product.
///
/// # Safety
/// As for `wt_element_add`.
#[no_mangle]
pub unsafe extern "C" fn wt_element_product(
    a: *const WtElement,
    b: *const WtElement,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(a);
    nonnull!(b);
    nonnull!(out);
    match product(&(*a).0, &(*b).0) {
        Ok(el) => give_element(el, out),
        Err(e) => fail(e),
    }
}

/// Commutator `a b - b a`.
///
/// # Safety
/// As for `wt_element_add`.
#[no_mangle]
pub unsafe extern "C" fn wt_element_commutator(
    a: *const WtElement,
    b: *const WtElement,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(a);
    nonnull!(b);
    nonnull!(out);
    match commutator(&(*a).0, &(*b).0) {
        Ok(el) => give_element(el, out),
        Err(e) => fail(e),
    }
}

/// Common degree of all terms; fails with `WT_STATUS_INVALID_ARGUMENT` on an
/// inhomogeneous element.
///
/// # Safety
/// `el` must be a live element handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_element_degree(el: *const WtElement, out: *mut i64) -> WtStatus {
    nonnull!(el);
    nonnull!(out);
    match (*el).0.degree() {
        Some(d) => {
            *out = d;
            WtStatus::Ok
        }
        None => {
            set_error("element is not degree-homogeneous");
            WtStatus::InvalidArgument
        }
    }
}

/// Membership of every term in the selected ring.
///
/// # Safety
/// `el` must be a live element handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_element_is_member(
    el: *const WtElement,
    kind: WtRingKind,
    twist: i64,
    out: *mut bool,
) -> WtStatus {
    nonnull!(el);
    nonnull!(out);
    let rank = (*el).0.rank();
    let spec = match kind {
        WtRingKind::SingularX => RingSpec::singular_x(rank),
        WtRingKind::ResolutionX => RingSpec::resolution_x(rank, twist),
        WtRingKind::WeightedY => match RingSpec::weighted_y(rank, twist) {
            Ok(s) => s,
            Err(e) => return fail(e),
        },
    };
    match spec.is_member(&(*el).0) {
        Ok(b) => {
            *out = b;
            WtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Fourier transform in the last variable (`Q -> P`, `P -> -Q`); fails on a
/// Laurent exponent in that variable.
///
/// # Safety
/// `el` must be a live element handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_fourier_transform(
    el: *const WtElement,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(el);
    nonnull!(out);
    let spec = ReflectionSpec::standard((*el).0.rank());
    match fourier::fourier_i(&(*el).0, &spec) {
        Ok(image) => give_element(image, out),
        Err(e) => fail(e),
    }
}

/// Builds the generator realization at rank `n >= 2` and the given twist.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_realization_new(
    n: usize,
    twist: i64,
    out: *mut *mut WtRealization,
) -> WtStatus {
    nonnull!(out);
    match build_realization(n, twist) {
        Ok(r) => {
            *out = Box::into_raw(Box::new(WtRealization(r)));
            WtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Looks up a realized generator by name: `e1`, `h2`, `fn`, `z`, `z_ell`,
/// `m[i,j]`, `rplus[i,j]`, `rminus[i,j]`, `aplus[i,j]` (1-based indices).
///
/// # Safety
/// `r` must be a live realization handle; `symbol` a valid string; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_realization_element(
    r: *const WtRealization,
    symbol: *const c_char,
    out: *mut *mut WtElement,
) -> WtStatus {
    nonnull!(r);
    nonnull!(out);
    let symbol = match read_str(symbol) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let sym = match Symbol::from_str(symbol) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    match (*r).0.get(sym) {
        Some(el) => give_element(el.clone(), out),
        None => {
            set_error(&format!("symbol {symbol} not present in this realization"));
            WtStatus::InvalidArgument
        }
    }
}

/// # Safety
/// `r` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wt_realization_free(r: *mut WtRealization) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs verification suites from a JSON configuration (the same schema as
/// the CLI `--config` file) and returns the manifest JSON. Returns
/// `WT_STATUS_SUITE_FAILURE` when the run completes but a suite fails; the
/// manifest is still written to `out` in that case.
///
/// # Safety
/// `config_json` must be a valid string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_run_suites(
    config_json: *const c_char,
    out: *mut *mut c_char,
) -> WtStatus {
    nonnull!(out);
    let config_json = match read_str(config_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let config: RunConfig = match serde_json::from_str(config_json) {
        Ok(c) => c,
        Err(e) => {
            set_error(&format!("bad configuration: {e}"));
            return WtStatus::InvalidArgument;
        }
    };
    let manifest = match report::run(&config) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let pass = manifest.pass;
    let json = match serde_json::to_string_pretty(&manifest) {
        Ok(j) => j,
        Err(e) => {
            set_error(&e.to_string());
            return WtStatus::InternalError;
        }
    };
    let status = give_string(json, out);
    if status != WtStatus::Ok {
        return status;
    }
    if pass {
        WtStatus::Ok
    } else {
        set_error("one or more suites failed; see the manifest");
        WtStatus::SuiteFailure
    }
}
