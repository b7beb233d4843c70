//! C interface to `lineup-core`.
//!
//! Elections are opaque handles created from the JSON election format.
//! Every function returns a [`LineupStatus`]; on failure a message is
//! available from [`lineup_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`lineup_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lineup_core::matching::{MatchingError, SearchBudget};
use lineup_core::metrics::gini;
use lineup_core::model::{parse_election, winner_set_report, Election};
use lineup_core::rules::{apply_rule, RuleError, RuleId};

/// Result codes of every `lineup_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineupStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownRule = 4,
    BudgetExhausted = 5,
    InvalidArgument = 6,
    Panic = 7,
}

/// Opaque election handle.
pub struct LineupElection {
    inner: Election,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: LineupStatus, msg: impl AsRef<str>) -> LineupStatus {
    set_error(msg.as_ref());
    status
}

fn guard(f: impl FnOnce() -> LineupStatus) -> LineupStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == LineupStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(LineupStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, LineupStatus> {
    if p.is_null() {
        return Err(fail(LineupStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(LineupStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Message of the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next `lineup_*` call on this thread.
#[no_mangle]
pub extern "C" fn lineup_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an election document (JSON or CSV) into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lineup_election_from_json(
    text: *const c_char,
    out: *mut *mut LineupElection,
) -> LineupStatus {
    guard(|| {
        if out.is_null() {
            return fail(LineupStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match str_arg(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_election(text) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(LineupElection { inner: e }));
                LineupStatus::Ok
            }
            Err(e) => fail(LineupStatus::ParseError, e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `e` must come from [`lineup_election_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lineup_election_free(e: *mut LineupElection) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Writes the candidate and position counts.
///
/// # Safety
/// `e` must be a live handle; `m` and `q` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lineup_election_size(
    e: *const LineupElection,
    m: *mut usize,
    q: *mut usize,
) -> LineupStatus {
    guard(|| {
        if e.is_null() || m.is_null() || q.is_null() {
            return fail(LineupStatus::NullPointer, "null argument");
        }
        *m = (*e).inner.num_candidates();
        *q = (*e).inner.num_positions();
        LineupStatus::Ok
    })
}

/// Runs `rule` (e.g. "utilitarian", "owa:1,1/2") and returns the winner set
/// as a JSON string in `out_json`. `winner_cap` 0 means the default cap.
///
/// # Safety
/// `e` must be a live handle, `rule` a nul-terminated string and
/// `out_json` a valid pointer. Free the result with
/// [`lineup_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lineup_solve(
    e: *const LineupElection,
    rule: *const c_char,
    winner_cap: usize,
    out_json: *mut *mut c_char,
) -> LineupStatus {
    guard(|| {
        if e.is_null() || out_json.is_null() {
            return fail(LineupStatus::NullPointer, "null argument");
        }
        *out_json = ptr::null_mut();
        let rule: RuleId = match str_arg(rule, "rule").map(str::parse) {
            Err(s) => return s,
            Ok(Err(err)) => return fail(LineupStatus::UnknownRule, RuleError::to_string(&err)),
            Ok(Ok(r)) => r,
        };
        let budget = if winner_cap == 0 {
            SearchBudget::default()
        } else {
            SearchBudget::with_cap(winner_cap)
        };
        let election = &(*e).inner;
        match apply_rule(&rule, election, &budget) {
            Ok(ws) => {
                let text = winner_set_report(election, &ws).to_string();
                *out_json = CString::new(text).expect("JSON has no nul").into_raw();
                LineupStatus::Ok
            }
            Err(err @ RuleError::Matching(MatchingError::NodeLimit { .. })) => {
                fail(LineupStatus::BudgetExhausted, err.to_string())
            }
            Err(err) => fail(LineupStatus::InvalidArgument, err.to_string()),
        }
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lineup_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Gini coefficient of `len` non-negative values.
///
/// # Safety
/// `values` must point to `len` doubles and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lineup_gini(
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> LineupStatus {
    guard(|| {
        if values.is_null() || out.is_null() {
            return fail(LineupStatus::NullPointer, "null argument");
        }
        match gini(std::slice::from_raw_parts(values, len)) {
            Ok(g) => {
                *out = g;
                LineupStatus::Ok
            }
            Err(err) => fail(LineupStatus::InvalidArgument, err.to_string()),
        }
    })
}
