//! C ABI for gamma-desk.
//!
//! Objects are opaque handles created by `gd_*_new`/`gd_*_parse`/`gd_*_compute`
//! and released with the matching `gd_*_free`. Every fallible call returns a
//! [`GdStatus`]; on failure the message is available from
//! [`gd_last_error_message`] on the same thread. Strings handed out by this
//! library must be released with [`gd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gamma_desk::perm::{descent_polynomial, ClassSpec, EnumLimits, Permutation};
use gamma_desk::poly::GammaVector;
use gamma_desk::recurrences::{Family, RecurrenceTable};
use gamma_desk::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidPermutation = 3,
    LimitExceeded = 4,
    NotPalindromic = 5,
    Arithmetic = 6,
    CorruptTable = 7,
    Io = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// Descent statistics of one permutation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GdStats {
    pub des: u32,
    pub maj: u32,
    pub dd: u32,
    pub dd0: u32,
    pub ddinf: u32,
    pub desp: u32,
    pub ddp: u32,
}

pub struct GdPermutation(Permutation);

pub struct GdTable(RecurrenceTable);

pub struct GdGamma(GammaVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> GdStatus {
    match err {
        Error::InvalidPermutation(_) => GdStatus::InvalidPermutation,
        Error::LimitExceeded { .. } => GdStatus::LimitExceeded,
        Error::NotPalindromic { .. } | Error::ZeroPolynomial | Error::NotDilksExpandable { .. } => {
            GdStatus::NotPalindromic
        }
        Error::InexactDivision { .. }
        | Error::NonUnitDivisor
        | Error::OrderMismatch(..)
        | Error::NonzeroResidual { .. } => GdStatus::Arithmetic,
        Error::InvalidArgument(_) => GdStatus::InvalidArgument,
        Error::CorruptTable { .. } => GdStatus::CorruptTable,
        Error::Io(_) | Error::Json(_) => GdStatus::Io,
    }
}

struct Fail(GdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GdStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(GdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(GdStatus::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(GdStatus::InvalidArgument, "interior NUL".into()))?;
    put(out, c.into_raw())
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

fn family_of(c: c_char) -> Result<Family, Fail> {
    match c as u8 {
        b'a' | b'A' => Ok(Family::A),
        b'b' | b'B' => Ok(Family::B),
        other => Err(Fail(
            GdStatus::InvalidArgument,
            format!("unknown family `{}`", other as char),
        )),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The caller owns
/// the returned string.
#[no_mangle]
pub extern "C" fn gd_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a one-line permutation such as "3142" or "3 1 4 2".
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_parse(word: *const c_char, out: *mut *mut GdPermutation) -> GdStatus {
    guard(|| {
        let p = Permutation::parse(str_arg(word)?)?;
        put(out, Box::into_raw(Box::new(GdPermutation(p))))
    })
}

/// Builds a permutation from `len` letters.
///
/// # Safety
/// `letters` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_new(letters: *const u32, len: usize, out: *mut *mut GdPermutation) -> GdStatus {
    guard(|| {
        if letters.is_null() && len > 0 {
            return Err(null());
        }
        let word = if len == 0 {
            vec![]
        } else {
            std::slice::from_raw_parts(letters, len).to_vec()
        };
        let p = Permutation::new(word)?;
        put(out, Box::into_raw(Box::new(GdPermutation(p))))
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_free(p: *mut GdPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_len(p: *const GdPermutation, out: *mut usize) -> GdStatus {
    guard(|| put(out, as_ref(p)?.0.len()))
}

/// # Safety
/// `p` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_stats(p: *const GdPermutation, out: *mut GdStats) -> GdStatus {
    guard(|| {
        let s = as_ref(p)?.0.stats();
        put(
            out,
            GdStats {
                des: s.des,
                maj: s.maj,
                dd: s.dd,
                dd0: s.dd0,
                ddinf: s.ddinf,
                desp: s.desp,
                ddp: s.ddp,
            },
        )
    })
}

/// Whether `p` contains `pattern` as a classical pattern.
///
/// # Safety
/// Both handles must be valid and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_contains(
    p: *const GdPermutation,
    pattern: *const GdPermutation,
    out: *mut bool,
) -> GdStatus {
    guard(|| put(out, as_ref(p)?.0.contains(&as_ref(pattern)?.0)))
}

/// # Safety
/// `p` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_perm_to_string(p: *const GdPermutation, out: *mut *mut c_char) -> GdStatus {
    guard(|| put_string(out, as_ref(p)?.0.to_string()))
}

/// Descent polynomial of a class, e.g. "all", "involutions",
/// "avoiding:2413,3142", rendered as text.
///
/// # Safety
/// `class` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_descent_polynomial(class: *const c_char, n: usize, out: *mut *mut c_char) -> GdStatus {
    guard(|| {
        let class: ClassSpec = str_arg(class)?.parse()?;
        let poly = descent_polynomial(n, &class, &EnumLimits::default())?;
        put_string(out, poly.to_string())
    })
}

/// γ-vector of a class's descent polynomial.
///
/// # Safety
/// `class` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_class_gamma(class: *const c_char, n: usize, out: *mut *mut GdGamma) -> GdStatus {
    guard(|| {
        let class: ClassSpec = str_arg(class)?.parse()?;
        let g = descent_polynomial(n, &class, &EnumLimits::default())?.gamma_expand()?;
        put(out, Box::into_raw(Box::new(GdGamma(g))))
    })
}

/// Computes rows 1..=max_n of family 'a' or 'b'.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_table_compute(family: c_char, max_n: u32, out: *mut *mut GdTable) -> GdStatus {
    guard(|| {
        let t = RecurrenceTable::compute(family_of(family)?, max_n)?;
        put(out, Box::into_raw(Box::new(GdTable(t))))
    })
}

/// # Safety
/// `t` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gd_table_free(t: *mut GdTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Decimal value of entry (n, k); zero outside the support of a stored row.
///
/// # Safety
/// `t` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_table_entry(t: *const GdTable, n: u32, k: i64, out: *mut *mut c_char) -> GdStatus {
    guard(|| {
        let t = &as_ref(t)?.0;
        if t.gamma_vector(n).is_none() {
            return Err(Fail(GdStatus::OutOfRange, format!("row {n} is not in the table")));
        }
        let v = t.entry(n, k).map_or_else(|| "0".to_string(), |v| v.to_string());
        put_string(out, v)
    })
}

/// γ-vector encoded by row `n`.
///
/// # Safety
/// `t` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_table_gamma(t: *const GdTable, n: u32, out: *mut *mut GdGamma) -> GdStatus {
    guard(|| {
        let g = as_ref(t)?
            .0
            .gamma_vector(n)
            .ok_or_else(|| Fail(GdStatus::OutOfRange, format!("row {n} is not in the table")))?;
        put(out, Box::into_raw(Box::new(GdGamma(g))))
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gd_gamma_free(g: *mut GdGamma) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_gamma_is_nonnegative(g: *const GdGamma, out: *mut bool) -> GdStatus {
    guard(|| put(out, as_ref(g)?.0.is_nonnegative()))
}

/// Comma-separated coefficients γ_0, γ_1, ...
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_gamma_to_string(g: *const GdGamma, out: *mut *mut c_char) -> GdStatus {
    guard(|| put_string(out, as_ref(g)?.0.to_string()))
}

/// Twice the center of symmetry of the expanded polynomial.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_gamma_center2(g: *const GdGamma, out: *mut u32) -> GdStatus {
    guard(|| put(out, as_ref(g)?.0.center2))
}
