//! C ABI for the `riordan` crate.
//!
//! Conventions, mirrored in the generated `include/riordan.h`:
//! - Every function returns a [`RiordanStatus`]; results travel through
//!   out-parameters. On any status other than `Ok` the out-parameters are
//!   left untouched and [`riordan_last_error`] carries a message.
//! - Arrays are opaque [`RiordanArrayHandle`] pointers, created by
//!   [`riordan_array_new`] and released with [`riordan_array_free`].
//! - Coefficients are exchanged as decimal rational strings (`"-5/16"`),
//!   never floating point; strings returned to the caller are released with
//!   [`riordan_string_free`].
//!
//! # Safety
//!
//! Every `extern "C"` function checks its pointer arguments for NULL and
//! validates UTF-8 before use; the remaining obligations on the caller are
//! the usual C ones, stated in the header: pass only handles and strings
//! obtained from this library, free each exactly once, and do not use a
//! pointer after freeing it.

// The per-function pointer contracts live in the doc comments above each
// function (and thus in the generated header), not in per-function
// `# Safety` sections, which would read as noise in the C header.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use riordan::antecedent::{horizontal_antecedent, vertical_antecedent};
use riordan::array::RiordanArray;
use riordan::expr::{parse_eval, ExprError};
use riordan::halves::{horizontal_half, vertical_half};
use riordan::moments::{hankel_transform, jfraction};
use riordan::rational::render;
use riordan::render::matrix_csv;
use riordan::series::Series;

/// Result code returned by every API function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiordanStatus {
    /// The call succeeded and the out-parameters are populated.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was rejected: an expression failed to parse, the pair is
    /// not a valid Riordan array, or an index is out of range.
    InvalidInput = 3,
    /// The computation failed: division by a series of higher order,
    /// insufficient precision, a non-square coefficient, and similar.
    MathError = 4,
    /// An unexpected internal failure; please report these.
    Internal = 5,
}

/// Selects one power series of a pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiordanComponent {
    /// The first component `g`, with `g(0) != 0`.
    G = 0,
    /// The second component `f`, with `f(0) = 0` and `f'(0) != 0`.
    F = 1,
}

/// Opaque handle to a Riordan array `(g, f)` held to a fixed number of
/// exact rational coefficients.
pub struct RiordanArrayHandle {
    inner: RiordanArray,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into();
    let stored = CString::new(text)
        .unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn fail(status: RiordanStatus, message: impl Into<String>) -> RiordanStatus {
    set_last_error(message);
    status
}

/// Run a body with a panic guard: unwinding must never cross the C boundary.
fn guarded(body: impl FnOnce() -> RiordanStatus) -> RiordanStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(RiordanStatus::Internal, "internal panic"),
    }
}

fn text_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, RiordanStatus> {
    if ptr.is_null() {
        return Err(fail(RiordanStatus::NullPointer, format!("{name} is NULL")));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(RiordanStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

fn array_arg<'a>(
    ptr: *const RiordanArrayHandle,
    name: &str,
) -> Result<&'a RiordanArray, RiordanStatus> {
    if ptr.is_null() {
        return Err(fail(RiordanStatus::NullPointer, format!("{name} is NULL")));
    }
    Ok(unsafe { &(*ptr).inner })
}

fn out_arg<T>(ptr: *mut T) -> Result<*mut T, RiordanStatus> {
    if ptr.is_null() {
        return Err(fail(RiordanStatus::NullPointer, "out-parameter is NULL"));
    }
    Ok(ptr)
}

fn give_array(out: *mut *mut RiordanArrayHandle, array: RiordanArray) -> RiordanStatus {
    let handle = Box::into_raw(Box::new(RiordanArrayHandle { inner: array }));
    unsafe { *out = handle };
    RiordanStatus::Ok
}

fn give_string(out: *mut *mut c_char, text: String) -> RiordanStatus {
    match CString::new(text) {
        Ok(owned) => {
            unsafe { *out = owned.into_raw() };
            RiordanStatus::Ok
        }
        Err(_) => fail(RiordanStatus::Internal, "result contained NUL"),
    }
}

fn eval_component(name: &str, text: &str, precision: usize) -> Result<Series, RiordanStatus> {
    parse_eval(text, precision).map_err(|e| {
        let status = match e {
            ExprError::Syntax { .. } => RiordanStatus::InvalidInput,
            ExprError::Eval { .. } => RiordanStatus::MathError,
        };
        fail(status, format!("{name}: {}", e.annotate(text)))
    })
}

fn math_err(e: impl std::fmt::Display) -> RiordanStatus {
    fail(RiordanStatus::MathError, e.to_string())
}

/// Parse `g` and `f` as series expressions (for example `"1/(1-x)"` and
/// `"x/(1-x)"`), evaluate both to `precision` coefficients, and return a
/// new array handle through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_new(
    g: *const c_char,
    f: *const c_char,
    precision: usize,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let (g_text, f_text) = match (text_arg(g, "g"), text_arg(f, "f")) {
            (Ok(g), Ok(f)) => (g, f),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if precision == 0 {
            return fail(RiordanStatus::InvalidInput, "precision must be at least 1");
        }
        let g_series = match eval_component("g", g_text, precision) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let f_series = match eval_component("f", f_text, precision) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match RiordanArray::new(g_series, f_series) {
            Ok(array) => give_array(out, array),
            Err(e) => fail(RiordanStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Release a handle returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_free(array: *mut RiordanArrayHandle) {
    if !array.is_null() {
        drop(unsafe { Box::from_raw(array) });
    }
}

/// The number of known coefficients of each component; 0 if `array` is NULL.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_precision(array: *const RiordanArrayHandle) -> usize {
    if array.is_null() {
        return 0;
    }
    unsafe { (*array).inner.precision() }
}

/// One series coefficient, as a rational string through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_coefficient(
    array: *const RiordanArrayHandle,
    component: RiordanComponent,
    index: usize,
    out: *mut *mut c_char,
) -> RiordanStatus {
    guarded(|| {
        let (array, out) = match (array_arg(array, "array"), out_arg(out)) {
            (Ok(a), Ok(o)) => (a, o),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let series = match component {
            RiordanComponent::G => array.g(),
            RiordanComponent::F => array.f(),
        };
        match series.coeff(index) {
            Ok(value) => give_string(out, render(value)),
            Err(e) => fail(RiordanStatus::InvalidInput, e.to_string()),
        }
    })
}

/// One triangle entry `[x^row] g f^col`, as a rational string through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_entry(
    array: *const RiordanArrayHandle,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> RiordanStatus {
    guarded(|| {
        let (array, out) = match (array_arg(array, "array"), out_arg(out)) {
            (Ok(a), Ok(o)) => (a, o),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if col > row {
            return fail(
                RiordanStatus::InvalidInput,
                format!("column {col} exceeds row {row}"),
            );
        }
        match array.expand(row + 1) {
            Ok(matrix) => give_string(out, render(&matrix.entry(row, col))),
            Err(e) => math_err(e),
        }
    })
}

/// The first `rows` triangle rows as CSV (one row per line), through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_expand_csv(
    array: *const RiordanArrayHandle,
    rows: usize,
    out: *mut *mut c_char,
) -> RiordanStatus {
    guarded(|| {
        let (array, out) = match (array_arg(array, "array"), out_arg(out)) {
            (Ok(a), Ok(o)) => (a, o),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match array.expand(rows) {
            Ok(matrix) => give_string(out, matrix_csv(&matrix)),
            Err(e) => math_err(e),
        }
    })
}

fn binary_op(
    a: *const RiordanArrayHandle,
    b: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
    op: impl FnOnce(&RiordanArray, &RiordanArray) -> Result<RiordanArray, RiordanStatus>,
) -> RiordanStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let (a, b) = match (array_arg(a, "a"), array_arg(b, "b")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match op(a, b) {
            Ok(result) => give_array(out, result),
            Err(s) => s,
        }
    })
}

fn unary_op(
    array: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
    op: impl FnOnce(&RiordanArray) -> Result<RiordanArray, RiordanStatus>,
) -> RiordanStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let array = match array_arg(array, "array") {
            Ok(a) => a,
            Err(s) => return s,
        };
        match op(array) {
            Ok(result) => give_array(out, result),
            Err(s) => s,
        }
    })
}

/// Group product `a * b = (g_a * (g_b o f_a), f_b o f_a)` through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_multiply(
    a: *const RiordanArrayHandle,
    b: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    binary_op(a, b, out, |a, b| a.multiply(b).map_err(math_err))
}

/// Group inverse through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_inverse(
    array: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    unary_op(array, out, |a| a.inverse().map_err(math_err))
}

/// The vertical half, whose triangle entries are `T[2n-k][n]` of the
/// source triangle `T`, through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_vertical_half(
    array: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    unary_op(array, out, |a| vertical_half(a).map_err(math_err))
}

/// The horizontal half, whose triangle entries are `T[2n][n+k]` of the
/// source triangle `T`, through `out`.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_horizontal_half(
    array: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    unary_op(array, out, |a| horizontal_half(a).map_err(math_err))
}

/// The array whose vertical half is `array`; the handle's own `(g, f)` is
/// read as the target pair. The result has two fewer known coefficients.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_vertical_antecedent(
    array: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    unary_op(array, out, |a| {
        vertical_antecedent(a.g(), a.f())
            .map(|r| r.antecedent)
            .map_err(math_err)
    })
}

/// The array whose horizontal half is `array`. Requires the linear
/// coefficient of `f` to be a rational square; the branch with positive
/// `f'(0)` is returned.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_horizontal_antecedent(
    array: *const RiordanArrayHandle,
    out: *mut *mut RiordanArrayHandle,
) -> RiordanStatus {
    unary_op(array, out, |a| {
        horizontal_antecedent(a.g(), a.f())
            .map(|r| r.antecedent)
            .map_err(math_err)
    })
}

/// Whether the array `M` satisfies `(M D)^2 = I` with `D = diag((-1)^n)`,
/// decided by two independent routes that must agree.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_is_pseudo_involution(
    array: *const RiordanArrayHandle,
    out: *mut bool,
) -> RiordanStatus {
    guarded(|| {
        let (array, out) = match (array_arg(array, "array"), out_arg(out)) {
            (Ok(a), Ok(o)) => (a, o),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match array.is_pseudo_involution() {
            Ok(verdict) => {
                unsafe { *out = verdict };
                RiordanStatus::Ok
            }
            Err(e) => math_err(e),
        }
    })
}

/// Hankel determinants `h_0..h_nmax` of the coefficient sequence of `g`,
/// as one CSV line through `out`. Requires `2*nmax + 1` known coefficients.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_hankel_csv(
    array: *const RiordanArrayHandle,
    nmax: usize,
    out: *mut *mut c_char,
) -> RiordanStatus {
    guarded(|| {
        let (array, out) = match (array_arg(array, "array"), out_arg(out)) {
            (Ok(a), Ok(o)) => (a, o),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match hankel_transform(array.g().coeffs(), nmax) {
            Ok(h) => {
                let line: Vec<String> = h.h().iter().map(render).collect();
                give_string(out, line.join(","))
            }
            Err(e) => math_err(e),
        }
    })
}

/// Jacobi continued-fraction parameters of `g` at the given depth:
/// `b_0..b_{depth-1}` through `b_out` and `lambda_1..lambda_depth` through
/// `lambda_out`, each as one CSV line. Requires `g(0) = 1` and
/// `2*depth + 1` known coefficients.
#[no_mangle]
pub unsafe extern "C" fn riordan_array_jfraction_csv(
    array: *const RiordanArrayHandle,
    depth: usize,
    b_out: *mut *mut c_char,
    lambda_out: *mut *mut c_char,
) -> RiordanStatus {
    guarded(|| {
        let array = match array_arg(array, "array") {
            Ok(a) => a,
            Err(s) => return s,
        };
        let (b_out, lambda_out) = match (out_arg(b_out), out_arg(lambda_out)) {
            (Ok(b), Ok(l)) => (b, l),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match jfraction(array.g(), depth) {
            Ok(jf) => {
                let b: Vec<String> = jf.b().iter().map(render).collect();
                let lam: Vec<String> = jf.lam().iter().map(render).collect();
                let status = give_string(b_out, b.join(","));
                if status != RiordanStatus::Ok {
                    return status;
                }
                let status = give_string(lambda_out, lam.join(","));
                if status != RiordanStatus::Ok {
                    // Keep the contract: on failure no out-parameter is kept.
                    unsafe { riordan_string_free(*b_out) };
                    return status;
                }
                RiordanStatus::Ok
            }
            Err(e) => math_err(e),
        }
    })
}

/// Release a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn riordan_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// The message for the most recent failure on this thread, or NULL if no
/// failure has occurred. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub unsafe extern "C" fn riordan_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.as_ptr(),
        None => ptr::null(),
    })
}
