//! C ABI over the `ratmle` library.
//!
//! Objects cross the boundary as opaque handles created by a `*_from_json`
//! or derived constructor and released with the matching `*_free`. Every
//! fallible function returns a [`RatmleStatus`]; on failure the message is
//! available from [`ratmle_last_error_message`] on the same thread until
//! the next call into the library. Strings returned through `out_json`
//! parameters are owned by the caller and released with
//! [`ratmle_string_free`]. Exact rationals are rendered as `"p/q"` strings
//! in JSON output; the optional `double` outputs are rounded.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use ratmle::exactalg::rational::{format_rational, Rational};
use ratmle::horn::{horn_map_eval, horn_pair_check, HornPair};
use ratmle::stagedtree::{tree_equivalent, tree_horn, tree_horn_reduced, tree_mle, StagedTree};
use ratmle::verify::verify_model;
use ratmle::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatmleStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    PoleAtInput = 5,
    ZeroDenominator = 6,
    BudgetExceeded = 7,
    Panic = 99,
}

/// A validated staged tree.
pub struct RatmleTree(StagedTree);

/// A Horn matrix with its coefficient vector.
pub struct RatmleHornPair(HornPair);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(RatmleStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => RatmleStatus::ParseError,
            Error::PoleAtInput { .. } | Error::DivisionByZero { .. } => RatmleStatus::PoleAtInput,
            Error::ZeroDenominator(_) => RatmleStatus::ZeroDenominator,
            Error::SearchBudgetExceeded(_) => RatmleStatus::BudgetExceeded,
            _ => RatmleStatus::InvalidInput,
        };
        Failure(code, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RatmleStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RatmleStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RatmleStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            RatmleStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(RatmleStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_counts(counts: *const i64, len: usize, expected: usize) -> Result<Vec<Rational>, Failure> {
    if len != expected {
        return Err(Failure(
            RatmleStatus::InvalidInput,
            format!("{len} counts given, {expected} expected"),
        ));
    }
    if len > 0 && counts.is_null() {
        return Err(null("counts"));
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(counts, len) };
    Ok(slice.iter().map(|&c| Rational::from_integer(c.into())).collect())
}

unsafe fn write_out<T>(out: *mut T, v: T) {
    if !out.is_null() {
        *out = v;
    }
}

unsafe fn write_json(out: *mut *mut c_char, v: &serde_json::Value) {
    if !out.is_null() {
        *out = CString::new(v.to_string()).expect("JSON has no NUL").into_raw();
    }
}

unsafe fn write_probabilities(out: *mut f64, values: &[Rational]) {
    if !out.is_null() {
        for (i, v) in values.iter().enumerate() {
            *out.add(i) = v.to_f64().unwrap_or(f64::NAN);
        }
    }
}

fn fractions(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ratmle_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ratmle_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned through an `out_json` parameter.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratmle_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a staged tree from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_from_json(json: *const c_char, out: *mut *mut RatmleTree) -> RatmleStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = StagedTree::parse(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(RatmleTree(t)));
        Ok(())
    })
}

/// # Safety
/// `tree` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_free(tree: *mut RatmleTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of leaves, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_num_leaves(tree: *const RatmleTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.num_leaves())
}

/// Number of edge labels, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_num_labels(tree: *const RatmleTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.labels().len())
}

/// Closed-form estimate from `len` leaf counts. Writes one `double` per leaf
/// to `out_probs` and `{"s_hat": [...], "p_hat": [...]}` to `out_json`;
/// either output may be null.
///
/// # Safety
/// `tree` must be a live handle, `counts` must point to `len` values and
/// `out_probs`, when not null, must have room for one value per leaf.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_mle(
    tree: *const RatmleTree,
    counts: *const i64,
    len: usize,
    out_probs: *mut f64,
    out_json: *mut *mut c_char,
) -> RatmleStatus {
    guard(|| {
        let t = &tree.as_ref().ok_or_else(|| null("tree"))?.0;
        let u = read_counts(counts, len, t.num_leaves())?;
        let (s, p) = tree_mle(t, &u)?;
        write_probabilities(out_probs, &p);
        write_json(out_json, &serde_json::json!({ "s_hat": fractions(&s), "p_hat": fractions(&p) }));
        Ok(())
    })
}

/// Horn pair of a tree, reduced when `reduced` is true.
///
/// # Safety
/// `tree` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_horn(
    tree: *const RatmleTree,
    reduced: bool,
    out: *mut *mut RatmleHornPair,
) -> RatmleStatus {
    guard(|| {
        let t = &tree.as_ref().ok_or_else(|| null("tree"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let pair = if reduced {
            tree_horn_reduced(t)?
        } else {
            let (h, l) = tree_horn(t);
            HornPair::new(h, l)?
        };
        *out = Box::into_raw(Box::new(RatmleHornPair(pair)));
        Ok(())
    })
}

/// Statistical equivalence of two trees.
///
/// # Safety
/// Both handles must be live and `out_equivalent` writable.
#[no_mangle]
pub unsafe extern "C" fn ratmle_tree_equivalent(
    a: *const RatmleTree,
    b: *const RatmleTree,
    out_equivalent: *mut bool,
) -> RatmleStatus {
    guard(|| {
        let a = &a.as_ref().ok_or_else(|| null("a"))?.0;
        let b = &b.as_ref().ok_or_else(|| null("b"))?.0;
        if out_equivalent.is_null() {
            return Err(null("out_equivalent"));
        }
        *out_equivalent = tree_equivalent(a, b)?;
        Ok(())
    })
}

/// Parses a Horn pair from `{"H": [[...]], "lambda": ["p/q", ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_from_json(json: *const c_char, out: *mut *mut RatmleHornPair) -> RatmleStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = HornPair::from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(RatmleHornPair(p)));
        Ok(())
    })
}

/// # Safety
/// `pair` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_to_json(pair: *const RatmleHornPair, out_json: *mut *mut c_char) -> RatmleStatus {
    guard(|| {
        let p = &pair.as_ref().ok_or_else(|| null("pair"))?.0;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        write_json(out_json, &serde_json::to_value(p.to_json()).expect("serializable"));
        Ok(())
    })
}

/// # Safety
/// `pair` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_free(pair: *mut RatmleHornPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Number of rows of `H`, or 0 for a null handle.
///
/// # Safety
/// `pair` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_num_rows(pair: *const RatmleHornPair) -> usize {
    pair.as_ref().map_or(0, |p| p.0.h.nrows())
}

/// Number of columns of `H` (model states), or 0 for a null handle.
///
/// # Safety
/// `pair` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_num_cols(pair: *const RatmleHornPair) -> usize {
    pair.as_ref().map_or(0, |p| p.0.h.ncols())
}

/// Runs the Horn pair check. `out_is_horn` receives the overall verdict and
/// `out_json` the verdict with its sign vector; either may be null.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_check(
    pair: *const RatmleHornPair,
    out_is_horn: *mut bool,
    out_json: *mut *mut c_char,
) -> RatmleStatus {
    guard(|| {
        let p = &pair.as_ref().ok_or_else(|| null("pair"))?.0;
        let v = horn_pair_check(&p.h, &p.lambda);
        write_out(out_is_horn, v.horn);
        write_json(out_json, &serde_json::to_value(&v).expect("serializable"));
        Ok(())
    })
}

/// Evaluates the Horn map at `len` counts. Writes one `double` per column
/// to `out_probs` and `{"value": [...], "sum": "p/q"}` to `out_json`.
///
/// # Safety
/// `pair` must be a live handle, `counts` must point to `len` values and
/// `out_probs`, when not null, must have room for one value per column.
#[no_mangle]
pub unsafe extern "C" fn ratmle_horn_eval(
    pair: *const RatmleHornPair,
    counts: *const i64,
    len: usize,
    out_probs: *mut f64,
    out_json: *mut *mut c_char,
) -> RatmleStatus {
    guard(|| {
        let p = &pair.as_ref().ok_or_else(|| null("pair"))?.0;
        let u = read_counts(counts, len, p.h.ncols())?;
        let v = horn_map_eval(p, &u)?;
        let sum: Rational = v.iter().sum();
        write_probabilities(out_probs, &v);
        write_json(out_json, &serde_json::json!({ "value": fractions(&v), "sum": format_rational(&sum) }));
        Ok(())
    })
}

/// Seeded verification of the Horn map as an estimator: idempotence,
/// critical point at the data and dominance over `samples` model points per
/// trial. `out_passed` is false when any check failed; `out_json` receives
/// `{"checks": [...], "seed": int, "failures": [...]}`.
///
/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ratmle_verify_horn(
    pair: *const RatmleHornPair,
    seed: u64,
    trials: usize,
    samples: usize,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> RatmleStatus {
    guard(|| {
        let p = &pair.as_ref().ok_or_else(|| null("pair"))?.0;
        let r = verify_model(p, Some(p), seed, trials, samples);
        write_out(out_passed, r.ok());
        write_json(out_json, &serde_json::to_value(&r).expect("serializable"));
        Ok(())
    })
}
