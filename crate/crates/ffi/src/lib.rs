//! C interface to `poisson_ext`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or by
//! an operation and released with the matching `*_free`. Every fallible
//! call returns a [`PxStatus`]; after a status other than `PX_OK` or
//! `PX_FALSE`, [`px_last_error`] describes the failure. Strings returned
//! by the library are released with [`px_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use poisson_ext::algebra::verify_poisson;
use poisson_ext::coflag::classify_coflag;
use poisson_ext::crossed::{check_crossed_system, PreCrossedDatum};
use poisson_ext::equivalence::{decide, ClassificationResult, Decision};
use poisson_ext::format::{emit_algebra, emit_classification, emit_matrix, emit_system, parse_algebra, parse_system};
use poisson_ext::metabelian::classify_metabelian;
use poisson_ext::{Error, Field, PoissonAlgebra};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PxStatus {
    /// Success, or a check that came out true.
    PxOk = 0,
    /// A check that came out false: axioms violated, not cohomologous.
    PxFalse = 1,
    PxNullPointer = 2,
    PxInvalidUtf8 = 3,
    PxParseError = 4,
    PxInvalidInput = 5,
    PxUndecidable = 6,
    PxTooLarge = 7,
    PxPanic = 8,
}

/// A Poisson algebra.
pub struct PxAlgebra(PoissonAlgebra);

/// A pre-crossed datum.
pub struct PxSystem(PreCrossedDatum);

/// The outcome of a classification.
pub struct PxClassification(ClassificationResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> PxStatus {
    match e {
        Error::Parse { .. } | Error::IndexOutOfRange { .. } | Error::FieldSyntax { .. } => PxStatus::PxParseError,
        Error::Undecidable(_) => PxStatus::PxUndecidable,
        Error::TooLarge(_) => PxStatus::PxTooLarge,
        _ => PxStatus::PxInvalidInput,
    }
}

fn fail(e: Error) -> PxStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `f`, converting panics into `PX_PANIC`.
fn guard(f: impl FnOnce() -> PxStatus) -> PxStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        PxStatus::PxPanic
    })
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PxStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(PxStatus::PxNullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        PxStatus::PxInvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn prime_field(p: u32) -> Result<Field, PxStatus> {
    Field::prime(u64::from(p)).map_err(fail)
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn store<T>(out: *mut *mut T, value: T) -> PxStatus {
    if out.is_null() {
        set_error("null output pointer");
        return PxStatus::PxNullPointer;
    }
    *out = Box::into_raw(Box::new(value));
    PxStatus::PxOk
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => {
                set_error("null handle");
                return PxStatus::PxNullPointer;
            }
        }
    };
}

macro_rules! try_px {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// The message of the last failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn px_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn px_algebra_parse(text: *const c_char, out: *mut *mut PxAlgebra) -> PxStatus {
    guard(|| {
        let text = try_px!(read_str(text));
        match parse_algebra(text) {
            Ok(a) => store(out, PxAlgebra(a)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_algebra_free(a: *mut PxAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_algebra_dim(a: *const PxAlgebra) -> usize {
    a.as_ref().map_or(0, |h| h.0.dim())
}

/// The algebra in file format; free with [`px_string_free`].
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_algebra_emit(a: *const PxAlgebra) -> *mut c_char {
    a.as_ref().map_or(ptr::null_mut(), |h| into_c_string(emit_algebra(&h.0)))
}

/// `PX_OK` when the Poisson identities hold, `PX_FALSE` otherwise.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_algebra_verify(a: *const PxAlgebra) -> PxStatus {
    guard(|| {
        let rep = verify_poisson(&handle!(a).0);
        if rep.passed() {
            PxStatus::PxOk
        } else {
            set_error(rep.to_string());
            PxStatus::PxFalse
        }
    })
}

/// Parses a crossed-system file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn px_system_parse(text: *const c_char, out: *mut *mut PxSystem) -> PxStatus {
    guard(|| {
        let text = try_px!(read_str(text));
        match parse_system(text) {
            Ok(d) => store(out, PxSystem(d)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_system_free(s: *mut PxSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The crossed system in file format; free with [`px_string_free`].
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_system_emit(s: *const PxSystem) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |h| into_c_string(emit_system(&h.0)))
}

/// `PX_OK` when the crossed-system axioms hold, `PX_FALSE` otherwise.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_system_check(s: *const PxSystem) -> PxStatus {
    guard(|| {
        let rep = check_crossed_system(&handle!(s).0);
        if rep.passed() {
            PxStatus::PxOk
        } else {
            set_error(rep.to_string());
            PxStatus::PxFalse
        }
    })
}

/// The crossed product of a crossed system.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn px_system_product(s: *const PxSystem, out: *mut *mut PxAlgebra) -> PxStatus {
    guard(|| store(out, PxAlgebra(handle!(s).0.crossed_product())))
}

/// Decides whether two crossed systems are cohomologous. On `PX_OK`, when
/// `witness` is not null it receives the map `r` in matrix file format.
///
/// # Safety
/// `a` and `b` must be live handles; `witness` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn px_system_equivalent(
    a: *const PxSystem,
    b: *const PxSystem,
    witness: *mut *mut c_char,
) -> PxStatus {
    guard(|| {
        let (a, b) = (handle!(a), handle!(b));
        match decide(&a.0, &b.0) {
            Ok(Decision::Equivalent(w)) => {
                if !witness.is_null() {
                    *witness = into_c_string(emit_matrix(&w.r));
                }
                PxStatus::PxOk
            }
            Ok(Decision::NotEquivalent) => PxStatus::PxFalse,
            Ok(Decision::Undecidable(why)) => {
                set_error(why);
                PxStatus::PxUndecidable
            }
            Err(e) => fail(e),
        }
    })
}

/// Classifies one-dimensional extensions of `a` over the prime field of
/// order `p`. A rational algebra is reduced modulo `p` first.
///
/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn px_classify_coflag(
    a: *const PxAlgebra,
    p: u32,
    out: *mut *mut PxClassification,
) -> PxStatus {
    guard(|| {
        let alg = &handle!(a).0;
        let field = try_px!(prime_field(p));
        let alg = if alg.field() == field {
            alg.clone()
        } else {
            match alg.convert(field) {
                Ok(x) => x,
                Err(e) => return fail(e),
            }
        };
        match classify_coflag(&alg, field) {
            Ok(r) => store(out, PxClassification(r)),
            Err(e) => fail(e),
        }
    })
}

/// Classifies extensions of the abelian algebra of dimension `dim_p` by
/// the abelian algebra of dimension `dim_v` over the prime field of order
/// `p`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn px_classify_metabelian(
    dim_p: usize,
    dim_v: usize,
    p: u32,
    out: *mut *mut PxClassification,
) -> PxStatus {
    guard(|| {
        let field = try_px!(prime_field(p));
        match classify_metabelian(dim_p, dim_v, field) {
            Ok(r) => store(out, PxClassification(r)),
            Err(e) => fail(e),
        }
    })
}

/// Number of classes, 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_classification_total(c: *const PxClassification) -> usize {
    c.as_ref().map_or(0, |h| h.0.total())
}

/// The classification report; free with [`px_string_free`].
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn px_classification_emit(c: *const PxClassification) -> *mut c_char {
    c.as_ref()
        .map_or(ptr::null_mut(), |h| into_c_string(emit_classification(&h.0)))
}

/// # Safety
/// `c` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_classification_free(c: *mut PxClassification) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
