//! C ABI for `treespace`.
//!
//! Every function returns a [`TsStatus`]. On failure the message is kept in
//! thread-local storage and can be read with [`ts_last_error`]. Strings
//! handed out by the library must be released with [`ts_string_free`];
//! complexes with [`ts_complex_free`].
//!
//! Array outputs follow one pattern: the caller passes a buffer and its
//! capacity, the library always writes the required length to `out_len`, and
//! returns `TS_STATUS_BUFFER_TOO_SMALL` if the buffer cannot hold it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use treespace::character::lie_character;
use treespace::complex::{build_complex, OrientedComplex, SpaceKind};
use treespace::cycle::{boundary_of_module_chain, build_fundamental_cycle};
use treespace::homology::complex_homology;
use treespace::lie::{normalize_sum, parse_bracket_sum, Flavor};
use treespace::report::{self, Depth, Module, RunConfig};
use treespace::whitehouse::hat_lie_character;
use treespace::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    ParseError = 5,
    VerificationFailed = 6,
    Internal = 7,
}

/// Which complex to build.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsSpace {
    TreeSpace = 0,
    PartitionNerve = 1,
}

/// Coefficient ring for bracket normalization.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsFlavor {
    Ordinary = 0,
    Super = 1,
}

/// Modules with a character table.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsModule {
    Lie = 0,
    SuperLie = 1,
    HatLie = 2,
}

/// Opaque handle to a built complex.
pub struct TsComplex {
    inner: OrientedComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::OutOfRange(_) => TsStatus::OutOfRange,
        Error::Parse(_) | Error::InvalidBracket(_) => TsStatus::ParseError,
        Error::BoundarySquared { .. } | Error::Exactness(_) | Error::NotACycle(_) => TsStatus::VerificationFailed,
        _ => TsStatus::InvalidArgument,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TsStatus::Internal
        }
    }
}

fn lib<T>(r: treespace::Result<T>) -> Result<T, (TsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TsStatus, String) {
    (TsStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `out` must point to `cap` writable elements unless `cap` is 0;
/// `out_len` must be valid for writes.
unsafe fn write_array<T: Copy>(values: &[T], out: *mut T, cap: usize, out_len: *mut usize) -> Result<(), (TsStatus, String)> {
    if out_len.is_null() {
        return Err(null("out_len"));
    }
    *out_len = values.len();
    if values.len() > cap {
        return Err((TsStatus::BufferTooSmall, format!("need {} elements, buffer holds {cap}", values.len())));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, (TsStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (TsStatus::Internal, "string contains NUL".to_string()))
}

/// # Safety
/// `s` must be null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (TsStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (TsStatus::ParseError, format!("{what} is not UTF-8")))
}

/// Message for the last failing call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build `T_n` or the partition nerve of `{1..n}`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_build(space: TsSpace, n: usize, out: *mut *mut TsComplex) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let kind = match space {
            TsSpace::TreeSpace => SpaceKind::TreeSpace,
            TsSpace::PartitionNerve => SpaceKind::PartitionNerve,
        };
        if n > 8 {
            return Err((TsStatus::OutOfRange, format!("n = {n} is above the supported maximum 8")));
        }
        let inner = lib(build_complex(kind, n))?;
        *out = Box::into_raw(Box::new(TsComplex { inner }));
        Ok(())
    })
}

/// Release a complex. Null is ignored.
///
/// # Safety
/// `c` must be null or a handle from [`ts_complex_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_free(c: *mut TsComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of simplices in each dimension.
///
/// # Safety
/// `c` must be a live handle; see the module docs for the buffer contract.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_f_vector(c: *const TsComplex, out: *mut usize, cap: usize, out_len: *mut usize) -> TsStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        write_array(&c.inner.f_vector(), out, cap, out_len)
    })
}

/// Euler characteristic.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_euler_characteristic(c: *const TsComplex, out: *mut i64) -> TsStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c.inner.euler_characteristic();
        Ok(())
    })
}

/// Betti numbers in degrees `0..=dim`, reduced or not. Torsion is reported
/// through `has_torsion` (may be null).
///
/// # Safety
/// `c` must be a live handle; see the module docs for the buffer contract.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_betti(
    c: *const TsComplex,
    reduced: bool,
    out: *mut usize,
    cap: usize,
    out_len: *mut usize,
    has_torsion: *mut bool,
) -> TsStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        let h = lib(complex_homology(&c.inner, reduced))?;
        if !has_torsion.is_null() {
            *has_torsion = !h.is_torsion_free();
        }
        write_array(&h.betti_numbers(), out, cap, out_len)
    })
}

/// Write the complex dump (JSON) to a new string.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_complex_dump(c: *const TsComplex, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(c.inner.export().to_json())?;
        Ok(())
    })
}

/// Whether the fundamental cycle of `T_n` has zero boundary (4 <= n <= 7).
///
/// # Safety
/// `is_cycle` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_fundamental_cycle_check(n: usize, is_cycle: *mut bool) -> TsStatus {
    guard(|| {
        if is_cycle.is_null() {
            return Err(null("is_cycle"));
        }
        if !(4..=7).contains(&n) {
            return Err((TsStatus::OutOfRange, format!("n = {n} outside 4..=7")));
        }
        let c = lib(treespace::complex::build_tree_complex(n))?;
        let f = lib(build_fundamental_cycle(n))?;
        *is_cycle = lib(boundary_of_module_chain(&f, &c))?.is_zero();
        Ok(())
    })
}

/// Normalize a bracket sum such as `"[a,[b,c]] - [b,[a,c]]"`; the result is
/// written as bracket text to a new string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_normalize(text: *const c_char, flavor: TsFlavor, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let flavor = match flavor {
            TsFlavor::Ordinary => Flavor::Ordinary,
            TsFlavor::Super => Flavor::Super,
        };
        let parsed = lib(parse_bracket_sum(text))?;
        let e = lib(normalize_sum(&parsed.terms, flavor))?;
        *out = into_c_string(e.to_text_named(parsed.names.as_deref()))?;
        Ok(())
    })
}

/// Character values, one per cycle type with the identity first (the order
/// of partitions from `1^m` down to `[m]`).
///
/// # Safety
/// See the module docs for the buffer contract.
#[no_mangle]
pub unsafe extern "C" fn ts_character(module: TsModule, n: usize, out: *mut i64, cap: usize, out_len: *mut usize) -> TsStatus {
    guard(|| {
        let chi = match module {
            TsModule::Lie | TsModule::SuperLie => {
                if !(1..=7).contains(&n) {
                    return Err((TsStatus::OutOfRange, format!("n = {n} outside 1..=7")));
                }
                let flavor = if module == TsModule::Lie { Flavor::Ordinary } else { Flavor::Super };
                lib(lie_character(n, flavor))?
            }
            TsModule::HatLie => {
                if !(3..=6).contains(&n) {
                    return Err((TsStatus::OutOfRange, format!("n = {n} outside 3..=6")));
                }
                lib(hat_lie_character(n))?
            }
        };
        write_array(chi.values(), out, cap, out_len)
    })
}

/// Run the `verify` checks and return the JSON report. Returns
/// `TS_STATUS_VERIFICATION_FAILED` (with the report still written) if any
/// check fails.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_verify_json(n: usize, full: bool, seed: u64, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let cfg = RunConfig { n, depth: if full { Depth::Full } else { Depth::Quick }, seed, timings: false, ..RunConfig::default() };
        let r = lib(report::cmd_verify(&cfg, None))?;
        *out = into_c_string(r.to_json())?;
        if r.ok {
            Ok(())
        } else {
            Err((TsStatus::VerificationFailed, "a check failed".into()))
        }
    })
}

/// Character table of a module as a JSON report.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_character_json(module: TsModule, n: usize, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = match module {
            TsModule::Lie => Module::Lie,
            TsModule::SuperLie => Module::SuperLie,
            TsModule::HatLie => Module::HatLie,
        };
        let cfg = RunConfig { n, ..RunConfig::default() };
        *out = into_c_string(lib(report::cmd_character(&cfg, m))?.to_json())?;
        Ok(())
    })
}
