//! C ABI for `otx-core`.
//!
//! Every fallible function returns an [`OtxStatus`]; on failure a message is
//! available from [`otx_last_error`] on the same thread. Patterns live
//! behind the opaque [`OtxPattern`] handle and strings returned through
//! `char **` out-parameters must be released with [`otx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use otx_core::analysis::{self, AnalysisError};
use otx_core::catalog::{self, GammaId};
use otx_core::iet::{self, IetError};
use otx_core::markov::{self, MarkovError, OverTwistVerdict, SearchOptions};
use otx_core::report::AnalysisReport;
use otx_core::{Pattern, PatternError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OtxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotAPermutation = 4,
    NotCyclic = 5,
    PeriodTooSmall = 6,
    NonConvergent = 7,
    NotGreen = 8,
    Rejected = 9,
    InvalidId = 10,
    InvalidArgument = 11,
    LimitExceeded = 12,
    Internal = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OtxVerdict {
    PassedBounded = 0,
    RefutedNecessary = 1,
    RefutedWitness = 2,
}

/// Opaque pattern handle.
pub struct OtxPattern {
    inner: Pattern,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: OtxStatus, message: impl ToString) -> OtxStatus {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
    status
}

fn pattern_status(e: &PatternError) -> OtxStatus {
    match e {
        PatternError::NotAPermutation { .. } => OtxStatus::NotAPermutation,
        PatternError::NotCyclic { .. } => OtxStatus::NotCyclic,
        PatternError::PeriodTooSmall(_) => OtxStatus::PeriodTooSmall,
        PatternError::Parse(_) => OtxStatus::Parse,
    }
}

fn markov_status(e: &MarkovError) -> OtxStatus {
    match e {
        MarkovError::LimitExceeded(_) => OtxStatus::LimitExceeded,
        MarkovError::InvalidArgument(_) => OtxStatus::InvalidArgument,
        MarkovError::Analysis(_) => OtxStatus::NonConvergent,
        _ => OtxStatus::Internal,
    }
}

fn iet_status(e: &IetError) -> OtxStatus {
    match e {
        IetError::Analysis(AnalysisError::NonConvergent { .. }) => OtxStatus::NonConvergent,
        IetError::NotGreen => OtxStatus::NotGreen,
        _ => OtxStatus::Rejected,
    }
}

/// Runs `body`, turning a panic into `Internal`.
fn guarded(body: impl FnOnce() -> OtxStatus) -> OtxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(OtxStatus::Internal, "internal error"),
    }
}

unsafe fn handle<'a>(p: *const OtxPattern) -> Result<&'a Pattern, OtxStatus> {
    if p.is_null() {
        return Err(fail(OtxStatus::NullPointer, "null pattern handle"));
    }
    Ok(&(*p).inner)
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> OtxStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            OtxStatus::Ok
        }
        Err(_) => fail(OtxStatus::Internal, "string contains a NUL byte"),
    }
}

unsafe fn write_pattern(out: *mut *mut OtxPattern, pattern: Pattern) -> OtxStatus {
    *out = Box::into_raw(Box::new(OtxPattern { inner: pattern }));
    OtxStatus::Ok
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn otx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a permutation such as `"2 3 1"` or `"[2,3,1]"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_parse(
    text: *const c_char,
    out: *mut *mut OtxPattern,
) -> OtxStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(OtxStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(OtxStatus::InvalidUtf8, "text is not UTF-8");
        };
        match Pattern::parse(text) {
            Ok(p) => write_pattern(out, p),
            Err(e) => fail(pattern_status(&e), e),
        }
    })
}

/// Builds a pattern from `len` 1-based images.
///
/// # Safety
/// `images` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_from_images(
    images: *const usize,
    len: usize,
    out: *mut *mut OtxPattern,
) -> OtxStatus {
    guarded(|| {
        if images.is_null() || out.is_null() {
            return fail(OtxStatus::NullPointer, "null argument");
        }
        let images = std::slice::from_raw_parts(images, len).to_vec();
        match Pattern::new(images) {
            Ok(p) => write_pattern(out, p),
            Err(e) => fail(pattern_status(&e), e),
        }
    })
}

/// # Safety
/// `pattern` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_free(pattern: *mut OtxPattern) {
    if !pattern.is_null() {
        drop(Box::from_raw(pattern));
    }
}

/// Period of the pattern, or 0 for a null handle.
///
/// # Safety
/// `pattern` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_period(pattern: *const OtxPattern) -> usize {
    handle(pattern).map_or(0, Pattern::period)
}

/// Copies the 1-based images into `buf`, which must hold the period.
///
/// # Safety
/// `pattern` must be a live handle and `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_images(
    pattern: *const OtxPattern,
    buf: *mut usize,
    cap: usize,
) -> OtxStatus {
    let p = match handle(pattern) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if buf.is_null() {
        return fail(OtxStatus::NullPointer, "null buffer");
    }
    if cap < p.period() {
        return fail(OtxStatus::InvalidArgument, "buffer shorter than the period");
    }
    ptr::copy_nonoverlapping(p.images().as_ptr(), buf, p.period());
    OtxStatus::Ok
}

/// Raw over-rotation pair `(p, q)`.
///
/// # Safety
/// `pattern` must be a live handle; `p` and `q` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_over_rotation(
    pattern: *const OtxPattern,
    p: *mut u64,
    q: *mut u64,
) -> OtxStatus {
    let pat = match handle(pattern) {
        Ok(x) => x,
        Err(s) => return s,
    };
    if p.is_null() || q.is_null() {
        return fail(OtxStatus::NullPointer, "null output");
    }
    let rot = pat.over_rotation_pair();
    *p = rot.p;
    *q = rot.q;
    OtxStatus::Ok
}

/// # Safety
/// `pattern` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_modality(
    pattern: *const OtxPattern,
    out: *mut usize,
) -> OtxStatus {
    let p = match handle(pattern) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(OtxStatus::NullPointer, "null output");
    }
    *out = p.modality();
    OtxStatus::Ok
}

/// # Safety
/// `pattern` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_is_convergent(
    pattern: *const OtxPattern,
    out: *mut bool,
) -> OtxStatus {
    let p = match handle(pattern) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(OtxStatus::NullPointer, "null output");
    }
    *out = p.is_convergent();
    OtxStatus::Ok
}

/// # Safety
/// `pattern` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_pattern_is_green(
    pattern: *const OtxPattern,
    out: *mut bool,
) -> OtxStatus {
    let p = match handle(pattern) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(OtxStatus::NullPointer, "null output");
    }
    *out = analysis::is_green_pattern(p);
    OtxStatus::Ok
}

/// Sharkovsky comparison: 1 if `m` comes first, -1 if `n` does, 0 if equal.
/// Zero arguments are rejected with -2.
#[no_mangle]
pub extern "C" fn otx_sharkovsky_cmp(m: u64, n: u64) -> i32 {
    if m == 0 || n == 0 {
        fail(OtxStatus::InvalidArgument, "arguments must be positive");
        return -2;
    }
    otx_core::sharkovsky_cmp(m, n) as i32
}

/// Bounded over-twist check up to periods `depth * q`. `json` may be null;
/// otherwise it receives the verdict as JSON.
///
/// # Safety
/// `pattern` must be a live handle, `verdict` valid, `json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn otx_verify_overtwist(
    pattern: *const OtxPattern,
    depth: usize,
    verdict: *mut OtxVerdict,
    json: *mut *mut c_char,
) -> OtxStatus {
    guarded(|| {
        let p = match handle(pattern) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if verdict.is_null() {
            return fail(OtxStatus::NullPointer, "null output");
        }
        let v = match markov::verify_overtwist_with(p, depth, &SearchOptions::default()) {
            Ok(v) => v,
            Err(e) => return fail(markov_status(&e), e),
        };
        *verdict = match v {
            OverTwistVerdict::PassedBounded { .. } => OtxVerdict::PassedBounded,
            OverTwistVerdict::RefutedNecessary { .. } => OtxVerdict::RefutedNecessary,
            OverTwistVerdict::RefutedWitness { .. } => OtxVerdict::RefutedWitness,
        };
        if json.is_null() {
            return OtxStatus::Ok;
        }
        write_string(json, serde_json::to_string(&v).expect("serializable"))
    })
}

/// Full analysis report as JSON.
///
/// # Safety
/// `pattern` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_analyze_json(
    pattern: *const OtxPattern,
    out: *mut *mut c_char,
) -> OtxStatus {
    guarded(|| {
        let p = match handle(pattern) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(OtxStatus::NullPointer, "null output");
        }
        let report = AnalysisReport::new(p);
        write_string(out, serde_json::to_string(&report).expect("serializable"))
    })
}

/// Interval exchange conjugate to the pattern, as JSON. `canonical` selects
/// the canonical blocks (green convergent patterns only) over the greedy
/// ones.
///
/// # Safety
/// `pattern` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_iet_json(
    pattern: *const OtxPattern,
    canonical: bool,
    out: *mut *mut c_char,
) -> OtxStatus {
    guarded(|| {
        let p = match handle(pattern) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(OtxStatus::NullPointer, "null output");
        }
        let blocks = if canonical {
            match iet::canonical_blocks(p) {
                Ok(b) => b,
                Err(e) => return fail(iet_status(&e), e),
            }
        } else {
            iet::greedy_blocks(p)
        };
        match iet::iet_from_blocks(p, &blocks) {
            Ok((spec, witness)) => write_string(
                out,
                serde_json::to_string(&spec.to_json(&witness.orbit)).expect("serializable"),
            ),
            Err(e) => fail(iet_status(&e), e),
        }
    })
}

/// The catalog pattern Γ_{r,p/q}.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn otx_catalog_gamma(
    p: usize,
    q: usize,
    r: usize,
    out: *mut *mut OtxPattern,
) -> OtxStatus {
    guarded(|| {
        if out.is_null() {
            return fail(OtxStatus::NullPointer, "null output");
        }
        match GammaId::new(p, q, r) {
            Ok(id) => write_pattern(out, catalog::gamma_pattern(id)),
            Err(e) => fail(OtxStatus::InvalidId, e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn otx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
