//! Exercises the C ABI the way a C caller would: raw pointers, status
//! codes, explicit frees.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use riordan_ffi::{
    riordan_array_coefficient, riordan_array_entry, riordan_array_expand_csv,
    riordan_array_free, riordan_array_hankel_csv, riordan_array_horizontal_antecedent,
    riordan_array_inverse, riordan_array_is_pseudo_involution, riordan_array_jfraction_csv,
    riordan_array_multiply, riordan_array_new, riordan_array_precision,
    riordan_array_vertical_antecedent, riordan_array_vertical_half, riordan_last_error,
    riordan_string_free, RiordanArrayHandle, RiordanComponent, RiordanStatus,
};

fn new_array(g: &str, f: &str, precision: usize) -> *mut RiordanArrayHandle {
    let g = CString::new(g).unwrap();
    let f = CString::new(f).unwrap();
    let mut handle: *mut RiordanArrayHandle = ptr::null_mut();
    let status = unsafe { riordan_array_new(g.as_ptr(), f.as_ptr(), precision, &mut handle) };
    assert_eq!(status, RiordanStatus::Ok, "{}", last_error_text());
    assert!(!handle.is_null());
    handle
}

fn take_string(text: *mut c_char) -> String {
    assert!(!text.is_null());
    let owned = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    unsafe { riordan_string_free(text) };
    owned
}

fn coefficient(array: *const RiordanArrayHandle, which: RiordanComponent, index: usize) -> String {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { riordan_array_coefficient(array, which, index, &mut out) };
    assert_eq!(status, RiordanStatus::Ok, "{}", last_error_text());
    take_string(out)
}

fn entry(array: *const RiordanArrayHandle, row: usize, col: usize) -> String {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { riordan_array_entry(array, row, col, &mut out) };
    assert_eq!(status, RiordanStatus::Ok, "{}", last_error_text());
    take_string(out)
}

fn last_error_text() -> String {
    let message = unsafe { riordan_last_error() };
    if message.is_null() {
        return "<no error recorded>".into();
    }
    unsafe { CStr::from_ptr(message) }.to_str().unwrap().to_owned()
}

#[test]
fn pascal_expand_invert_and_involution() {
    let pascal = new_array("1/(1-x)", "x/(1-x)", 12);
    assert_eq!(unsafe { riordan_array_precision(pascal) }, 12);

    let mut csv: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_expand_csv(pascal, 4, &mut csv) },
        RiordanStatus::Ok
    );
    assert_eq!(take_string(csv), "1\n1,1\n1,2,1\n1,3,3,1\n");
    assert_eq!(entry(pascal, 4, 2), "6");

    let mut inverse: *mut RiordanArrayHandle = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_inverse(pascal, &mut inverse) },
        RiordanStatus::Ok
    );
    assert_eq!(coefficient(inverse, RiordanComponent::G, 1), "-1");

    let mut product: *mut RiordanArrayHandle = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_multiply(pascal, inverse, &mut product) },
        RiordanStatus::Ok
    );
    assert_eq!(entry(product, 3, 3), "1");
    assert_eq!(entry(product, 3, 1), "0");

    let mut verdict = false;
    assert_eq!(
        unsafe { riordan_array_is_pseudo_involution(pascal, &mut verdict) },
        RiordanStatus::Ok
    );
    assert!(verdict);

    unsafe {
        riordan_array_free(product);
        riordan_array_free(inverse);
        riordan_array_free(pascal);
    }
}

#[test]
fn vertical_half_and_antecedent_invert_each_other() {
    let source = new_array("1/(1-x)", "x*(1+x)/(1-x)", 16);

    let mut vertical: *mut RiordanArrayHandle = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_vertical_half(source, &mut vertical) },
        RiordanStatus::Ok
    );
    // First component of this half is the central Delannoy series.
    assert_eq!(coefficient(vertical, RiordanComponent::G, 3), "63");
    assert_eq!(coefficient(vertical, RiordanComponent::G, 4), "321");

    let mut back: *mut RiordanArrayHandle = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_vertical_antecedent(vertical, &mut back) },
        RiordanStatus::Ok
    );
    assert_eq!(coefficient(back, RiordanComponent::G, 5), "1");
    assert_eq!(coefficient(back, RiordanComponent::F, 1), "1");
    assert_eq!(coefficient(back, RiordanComponent::F, 2), "2");

    unsafe {
        riordan_array_free(back);
        riordan_array_free(vertical);
        riordan_array_free(source);
    }
}

#[test]
fn horizontal_antecedent_of_pascal() {
    let pascal = new_array("1/(1-x)", "x/(1-x)", 16);
    let mut antecedent: *mut RiordanArrayHandle = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_horizontal_antecedent(pascal, &mut antecedent) },
        RiordanStatus::Ok
    );
    assert_eq!(coefficient(antecedent, RiordanComponent::G, 1), "1/2");
    assert_eq!(entry(antecedent, 3, 0), "-1/16");
    assert_eq!(entry(antecedent, 3, 1), "3/8");

    unsafe {
        riordan_array_free(antecedent);
        riordan_array_free(pascal);
    }
}

#[test]
fn hankel_and_jfraction_of_catalan() {
    let catalan = new_array("catalan(x)", "x*catalan(x)", 16);

    let mut hankel: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_hankel_csv(catalan, 5, &mut hankel) },
        RiordanStatus::Ok
    );
    assert_eq!(take_string(hankel), "1,1,1,1,1,1");

    let mut b: *mut c_char = ptr::null_mut();
    let mut lambda: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { riordan_array_jfraction_csv(catalan, 4, &mut b, &mut lambda) },
        RiordanStatus::Ok
    );
    assert_eq!(take_string(b), "1,2,2,2");
    assert_eq!(take_string(lambda), "1,1,1,1");

    unsafe { riordan_array_free(catalan) };
}

#[test]
fn error_paths_report_status_and_message() {
    let g = CString::new("1/(1-x)").unwrap();
    let f = CString::new("x/(1-x)").unwrap();

    // NULL out-parameter.
    let status = unsafe { riordan_array_new(g.as_ptr(), f.as_ptr(), 8, ptr::null_mut()) };
    assert_eq!(status, RiordanStatus::NullPointer);

    // Invalid UTF-8 in an expression.
    let bad = [0xffu8, 0x00];
    let mut handle: *mut RiordanArrayHandle = ptr::null_mut();
    let status = unsafe {
        riordan_array_new(bad.as_ptr() as *const c_char, f.as_ptr(), 8, &mut handle)
    };
    assert_eq!(status, RiordanStatus::InvalidUtf8);
    assert!(handle.is_null());

    // Syntax error.
    let broken = CString::new("1/(1-x").unwrap();
    let status = unsafe { riordan_array_new(broken.as_ptr(), f.as_ptr(), 8, &mut handle) };
    assert_eq!(status, RiordanStatus::InvalidInput);
    assert!(last_error_text().contains("syntax error"));

    // Math failure during evaluation.
    let pole = CString::new("1/x").unwrap();
    let status = unsafe { riordan_array_new(pole.as_ptr(), f.as_ptr(), 8, &mut handle) };
    assert_eq!(status, RiordanStatus::MathError);

    // Not a Riordan pair: f(0) != 0.
    let unit = CString::new("1+x").unwrap();
    let status = unsafe { riordan_array_new(g.as_ptr(), unit.as_ptr(), 8, &mut handle) };
    assert_eq!(status, RiordanStatus::InvalidInput);
    assert!(handle.is_null());

    // Index errors on a valid handle.
    let pascal = new_array("1/(1-x)", "x/(1-x)", 8);
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { riordan_array_entry(pascal, 2, 3, &mut out) };
    assert_eq!(status, RiordanStatus::InvalidInput);
    let status = unsafe {
        riordan_array_coefficient(pascal, RiordanComponent::G, 99, &mut out)
    };
    assert_eq!(status, RiordanStatus::InvalidInput);

    // Insufficient precision for a transform.
    let status = unsafe { riordan_array_hankel_csv(pascal, 6, &mut out) };
    assert_eq!(status, RiordanStatus::MathError);
    assert!(out.is_null(), "out-parameter must be untouched on failure");

    unsafe { riordan_array_free(pascal) };
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        riordan_array_free(ptr::null_mut());
        riordan_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { riordan_array_precision(ptr::null()) }, 0);
    let mut out: *mut RiordanArrayHandle = ptr::null_mut();
    let status = unsafe { riordan_array_vertical_half(ptr::null(), &mut out) };
    assert_eq!(status, RiordanStatus::NullPointer);
}
