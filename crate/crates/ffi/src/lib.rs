//! C ABI over `ellweyl`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Fallible calls return an
//! [`EllweylStatus`] and write their result through an out-pointer. The
//! message for the most recent failure on the calling thread is available
//! from [`ellweyl_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ellweyl::group::{central_z, coxeter_triple, reflection_triple, Triple};
use ellweyl::hurwitz::{orbit_explore, standard_tuple, OrbitCensus};
use ellweyl::rootsys::{root_system, Kind, RootVector};
use ellweyl::scherk::scherk_length_triple;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllweylStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotRoot = 3,
    Json = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllweylKind {
    D4 = 0,
    E6 = 1,
    E7 = 2,
    E8 = 3,
}

impl From<EllweylKind> for Kind {
    fn from(k: EllweylKind) -> Kind {
        match k {
            EllweylKind::D4 => Kind::D4,
            EllweylKind::E6 => Kind::E6,
            EllweylKind::E7 => Kind::E7,
            EllweylKind::E8 => Kind::E8,
        }
    }
}

/// An element of the hyperbolic cover in normal form.
pub struct EllweylTriple(Triple);

/// A finished Hurwitz orbit census.
pub struct EllweylCensus(OrbitCensus);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(EllweylStatus, String);

fn fail<T>(status: EllweylStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EllweylStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EllweylStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EllweylStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    match p.as_ref() {
        Some(r) => Ok(r),
        None => fail(EllweylStatus::NullPointer, format!("{what} is null")),
    }
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(EllweylStatus::NullPointer, "out pointer is null");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(EllweylStatus::NullPointer, "out pointer is null");
    }
    *out = value;
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ellweyl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of roots of the finite root system.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_root_count(kind: EllweylKind, out: *mut usize) -> EllweylStatus {
    guard(|| write(out, root_system(kind.into()).roots().len()))
}

#[no_mangle]
pub extern "C" fn ellweyl_triple_identity(kind: EllweylKind) -> *mut EllweylTriple {
    Box::into_raw(Box::new(EllweylTriple(Triple::identity(kind.into()))))
}

#[no_mangle]
pub extern "C" fn ellweyl_triple_coxeter(kind: EllweylKind) -> *mut EllweylTriple {
    Box::into_raw(Box::new(EllweylTriple(coxeter_triple(kind.into()))))
}

#[no_mangle]
pub extern "C" fn ellweyl_triple_central(kind: EllweylKind) -> *mut EllweylTriple {
    Box::into_raw(Box::new(EllweylTriple(central_z(kind.into()))))
}

/// Reflection in `beta + k a + l b`, with `beta` in simple-root coordinates.
///
/// # Safety
/// `beta` must point to `len` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_reflection(
    kind: EllweylKind,
    beta: *const i64,
    len: usize,
    k: i64,
    l: i64,
    out: *mut *mut EllweylTriple,
) -> EllweylStatus {
    guard(|| {
        let kind = Kind::from(kind);
        if beta.is_null() {
            return fail(EllweylStatus::NullPointer, "beta is null");
        }
        if len != kind.rank() {
            return fail(EllweylStatus::InvalidArgument, format!("expected {} coefficients", kind.rank()));
        }
        let gamma = RootVector::new(std::slice::from_raw_parts(beta, len).to_vec(), k, l);
        match reflection_triple(kind, &gamma) {
            Ok(t) => store(out, EllweylTriple(t)),
            Err(e) => fail(EllweylStatus::NotRoot, e.to_string()),
        }
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_mul(
    a: *const EllweylTriple,
    b: *const EllweylTriple,
    out: *mut *mut EllweylTriple,
) -> EllweylStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        if a.0.kind() != b.0.kind() {
            return fail(EllweylStatus::InvalidArgument, "triples of different types");
        }
        store(out, EllweylTriple(a.0.mul(&b.0)))
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_inverse(
    a: *const EllweylTriple,
    out: *mut *mut EllweylTriple,
) -> EllweylStatus {
    guard(|| store(out, EllweylTriple(deref(a, "a")?.0.inverse())))
}

/// False if either pointer is NULL.
///
/// # Safety
/// Non-null arguments must be live handles.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_equal(a: *const EllweylTriple, b: *const EllweylTriple) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_is_identity(a: *const EllweylTriple, out: *mut bool) -> EllweylStatus {
    guard(|| write(out, deref(a, "a")?.0.is_identity()))
}

/// Scherk length of the element, computed on its lift.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_scherk_length(a: *const EllweylTriple, out: *mut usize) -> EllweylStatus {
    guard(|| write(out, scherk_length_triple(&deref(a, "a")?.0).length))
}

/// JSON form `{kind, w_fin, lambda, mu}`; free with [`ellweyl_string_free`].
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_to_json(a: *const EllweylTriple, out: *mut *mut c_char) -> EllweylStatus {
    guard(|| {
        let s = serde_json::to_string(&deref(a, "a")?.0).map_err(|e| Failure(EllweylStatus::Json, e.to_string()))?;
        write(out, into_c_string(s))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_from_json(
    json: *const c_char,
    out: *mut *mut EllweylTriple,
) -> EllweylStatus {
    guard(|| {
        if json.is_null() {
            return fail(EllweylStatus::NullPointer, "json is null");
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(EllweylStatus::InvalidArgument, e.to_string()))?;
        let t: Triple = serde_json::from_str(text).map_err(|e| Failure(EllweylStatus::Json, e.to_string()))?;
        store(out, EllweylTriple(t))
    })
}

/// # Safety
/// `a` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_triple_free(a: *mut EllweylTriple) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Census of the orbit of the standard factorization. A census that hit
/// `max_states` is still returned; check [`ellweyl_census_is_complete`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_explore(
    kind: EllweylKind,
    coeff_bound: i64,
    max_states: usize,
    out: *mut *mut EllweylCensus,
) -> EllweylStatus {
    guard(|| {
        if coeff_bound < 0 || max_states == 0 {
            return fail(EllweylStatus::InvalidArgument, "bound must be >= 0 and max_states positive");
        }
        let census = orbit_explore(&standard_tuple(kind.into()), coeff_bound, max_states);
        store(out, EllweylCensus(census))
    })
}

/// Number of stored states, or 0 for NULL.
///
/// # Safety
/// Non-null `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_len(c: *const EllweylCensus) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// Non-null `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_truncations(c: *const EllweylCensus) -> u64 {
    c.as_ref().map_or(0, |c| c.0.truncations())
}

/// # Safety
/// Non-null `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_is_complete(c: *const EllweylCensus) -> bool {
    c.as_ref().is_some_and(|c| c.0.is_complete())
}

/// Summary as JSON; free with [`ellweyl_string_free`].
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_summary_json(
    c: *const EllweylCensus,
    out: *mut *mut c_char,
) -> EllweylStatus {
    guard(|| {
        let s = serde_json::to_string(&deref(c, "census")?.0.summary())
            .map_err(|e| Failure(EllweylStatus::Json, e.to_string()))?;
        write(out, into_c_string(s))
    })
}

/// Product of the seed factorization, as a new handle.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_product(
    c: *const EllweylCensus,
    out: *mut *mut EllweylTriple,
) -> EllweylStatus {
    guard(|| store(out, EllweylTriple(deref(c, "census")?.0.product().clone())))
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ellweyl_census_free(c: *mut EllweylCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
