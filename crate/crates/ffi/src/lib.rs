//! C interface to `masscalc`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `mc_*_free` function. Every fallible call returns an
//! [`McStatus`]; on failure a description is kept per thread and can be read
//! with [`mc_last_error`]. Field elements are passed as NUL-terminated
//! strings such as `"-3/4"`, and strings returned by the library are freed
//! with [`mc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use masscalc::affine::{FreeVector, Point};
use masscalc::document::{run_document, DocumentError};
use masscalc::field::{Field, FieldElement};
use masscalc::mass::{reduce, MassElement};
use masscalc::weighted::WeightedSet;
use masscalc::Error;

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    FieldMismatch = 4,
    DimensionMismatch = 5,
    DivisionByZero = 6,
    NoCenter = 7,
    UnsupportedCharacteristic = 8,
    Degenerate = 9,
    Schema = 10,
    Other = 11,
}

impl From<&Error> for McStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::FieldMismatch { .. } => McStatus::FieldMismatch,
            Error::DimensionMismatch { .. } => McStatus::DimensionMismatch,
            Error::DivisionByZero => McStatus::DivisionByZero,
            Error::NotPrime(_) | Error::InvalidTolerance(_) | Error::ParseElement { .. } => {
                McStatus::Parse
            }
            Error::NoCenter | Error::NoCriticalPoint => McStatus::NoCenter,
            Error::UnsupportedCharacteristic(_) => McStatus::UnsupportedCharacteristic,
            Error::Degenerate(_) | Error::SingularMatrix => McStatus::Degenerate,
            _ => McStatus::Other,
        }
    }
}

/// A scalar field.
pub struct McField(Field);

/// A finite weighted set of points.
pub struct McWeightedSet(WeightedSet);

/// A weighty point or a mass dipole.
pub struct McMassElement(MassElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: McStatus, msg: impl Into<String>) -> McStatus {
    set_error(msg.into());
    status
}

fn fail_with(e: Error) -> McStatus {
    fail((&e).into(), e.to_string())
}

/// Runs `f`, clearing the last error first.
fn guard(f: impl FnOnce() -> Result<(), McStatus>) -> McStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match f() {
        Ok(()) => McStatus::Ok,
        Err(status) => status,
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, McStatus> {
    if s.is_null() {
        return Err(fail(McStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(McStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, McStatus> {
    p.as_ref()
        .ok_or_else(|| fail(McStatus::NullPointer, "null handle"))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, McStatus> {
    p.as_mut()
        .ok_or_else(|| fail(McStatus::NullPointer, "null output pointer"))
}

unsafe fn elements(
    field: Field,
    coords: *const *const c_char,
    dim: usize,
) -> Result<Vec<FieldElement>, McStatus> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    if coords.is_null() {
        return Err(fail(McStatus::NullPointer, "null coordinate array"));
    }
    std::slice::from_raw_parts(coords, dim)
        .iter()
        .map(|&c| field.parse(str_arg(c)?).map_err(fail_with))
        .collect()
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Message describing the last failure on this thread, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by the library.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a field from `"rational"`, `"fp:<p>"`, `"float"` or
/// `"float:<eps>"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_field_new(spec: *const c_char, out: *mut *mut McField) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let spec = str_arg(spec)?;
        let field: Field = spec.parse().map_err(fail_with)?;
        *out = boxed(McField(field));
        Ok(())
    })
}

/// # Safety
/// `field` must be null or a handle from [`mc_field_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_field_free(field: *mut McField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Creates an empty weighted set in dimension `dim`.
///
/// # Safety
/// `field` must be a live field handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_weighted_set_new(
    field: *const McField,
    dim: usize,
    out: *mut *mut McWeightedSet,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let field = handle(field)?.0;
        *out = boxed(McWeightedSet(WeightedSet::new(field, dim)));
        Ok(())
    })
}

/// Adds `mass` at the point with the given `dim` coordinates. Masses at an
/// existing point are summed.
///
/// # Safety
/// `set` must be a live handle, `coords` an array of `dim` NUL-terminated
/// strings and `mass` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mc_weighted_set_insert(
    set: *mut McWeightedSet,
    coords: *const *const c_char,
    dim: usize,
    mass: *const c_char,
) -> McStatus {
    guard(|| {
        let set = &mut out_arg(set)?.0;
        let field = set.field();
        let point = Point::new(field, elements(field, coords, dim)?).map_err(fail_with)?;
        let mass = field.parse(str_arg(mass)?).map_err(fail_with)?;
        set.insert(point, mass).map_err(fail_with)
    })
}

/// Number of distinct points carrying nonzero mass.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_weighted_set_len(set: *const McWeightedSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `set` must be null or a handle from [`mc_weighted_set_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_weighted_set_free(set: *mut McWeightedSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// The weighty point or dipole a weighted set reduces to.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_reduce(
    set: *const McWeightedSet,
    out: *mut *mut McMassElement,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let e = reduce(&handle(set)?.0).map_err(fail_with)?;
        *out = boxed(McMassElement(e));
        Ok(())
    })
}

/// A weighty point. Zero mass gives the zero dipole.
///
/// # Safety
/// `field` must be a live handle, `coords` an array of `dim` strings, `mass`
/// a string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_weighty_new(
    field: *const McField,
    coords: *const *const c_char,
    dim: usize,
    mass: *const c_char,
    out: *mut *mut McMassElement,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let field = handle(field)?.0;
        let point = Point::new(field, elements(field, coords, dim)?).map_err(fail_with)?;
        let mass = field.parse(str_arg(mass)?).map_err(fail_with)?;
        *out = boxed(McMassElement(
            MassElement::weighty(point, mass).map_err(fail_with)?,
        ));
        Ok(())
    })
}

/// A mass dipole with the given vector.
///
/// # Safety
/// As for [`mc_weighty_new`].
#[no_mangle]
pub unsafe extern "C" fn mc_dipole_new(
    field: *const McField,
    coords: *const *const c_char,
    dim: usize,
    out: *mut *mut McMassElement,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let field = handle(field)?.0;
        let v = FreeVector::new(field, elements(field, coords, dim)?).map_err(fail_with)?;
        *out = boxed(McMassElement(MassElement::dipole(v)));
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_mass_add(
    a: *const McMassElement,
    b: *const McMassElement,
    out: *mut *mut McMassElement,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let sum = handle(a)?.0.add(&handle(b)?.0).map_err(fail_with)?;
        *out = boxed(McMassElement(sum));
        Ok(())
    })
}

/// # Safety
/// `e` must be a live handle, `factor` a string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_mass_scale(
    e: *const McMassElement,
    factor: *const c_char,
    out: *mut *mut McMassElement,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let e = &handle(e)?.0;
        let mu = e.field().parse(str_arg(factor)?).map_err(fail_with)?;
        *out = boxed(McMassElement(e.scale(&mu).map_err(fail_with)?));
        Ok(())
    })
}

/// Whether `e` is a weighty point. False for null.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_mass_is_weighty(e: *const McMassElement) -> bool {
    e.as_ref().is_some_and(|e| e.0.is_weighty())
}

/// JSON text of `e`, for example
/// `{"type":"weighty","point":["4","0"],"mass":"3"}`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer. The string is freed
/// with [`mc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mc_mass_to_json(
    e: *const McMassElement,
    out: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        let out = out_arg(out)?;
        let json = serde_json::to_string(&handle(e)?.0)
            .map_err(|e| fail(McStatus::Other, e.to_string()))?;
        *out = c_string(json);
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_mass_free(e: *mut McMassElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Executes a JSON query document. On success `*out_json` receives the
/// report and `*exit_code` is 0 when every verdict passed, 1 otherwise.
/// On failure `*exit_code` holds the command-line exit code of the error.
/// `field` may be null to keep the document's own field.
///
/// # Safety
/// `text` must be a NUL-terminated string, `field` null or a live handle,
/// and both output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn mc_run_document(
    text: *const c_char,
    field: *const McField,
    out_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> McStatus {
    guard(|| {
        let out_json = out_arg(out_json)?;
        let exit_code = out_arg(exit_code)?;
        let text = str_arg(text)?;
        let field = field.as_ref().map(|f| f.0);
        match run_document(text, field) {
            Ok(output) => {
                *exit_code = output.exit_code();
                *out_json = c_string(output.to_json());
                Ok(())
            }
            Err(e) => {
                *exit_code = e.exit_code();
                *out_json = ptr::null_mut();
                let status = match &e {
                    DocumentError::Parse { .. } => McStatus::Parse,
                    DocumentError::Schema(_) => McStatus::Schema,
                    DocumentError::Query { source, .. } | DocumentError::Algebra(source) => {
                        source.into()
                    }
                };
                Err(fail(status, e.to_string()))
            }
        }
    })
}
