//! C ABI over the isochrone library.
//!
//! Every fallible call returns an [`IsoStatus`]; on failure the message is
//! available from [`iso_last_error`] until the next failing call on the same
//! thread. Strings handed out by the library are released with
//! [`iso_string_free`], systems with [`iso_system_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_double, size_t};

use isochrone::centerlab::{boundary_radius, classify, is_center, return_map, BoundaryRadius};
use isochrone::input::{Settings, SystemForm, SystemSpec};
use isochrone::poly::{parse_rational, BivarPoly};
use isochrone::report::analyze;
use isochrone::system::FactoredSystem;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotACenter = 4,
    NotFactored = 5,
    Analysis = 6,
    Panic = 7,
}

/// Opaque handle to a parsed system.
pub struct IsoSystem {
    spec: SystemSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: IsoStatus, msg: impl Into<String>) -> IsoStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> IsoStatus) -> IsoStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IsoStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, IsoStatus> {
    if p.is_null() {
        return Err(fail(IsoStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(IsoStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn system<'a>(s: *const IsoSystem) -> Result<&'a IsoSystem, IsoStatus> {
    s.as_ref().ok_or_else(|| fail(IsoStatus::NullPointer, "null system handle"))
}

fn factored(s: &IsoSystem) -> Result<FactoredSystem, IsoStatus> {
    s.spec
        .factored()
        .ok_or_else(|| fail(IsoStatus::NotFactored, "H is not of the form Q·R(x^2 + y^2)"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> IsoStatus {
    if out.is_null() {
        return fail(IsoStatus::NullPointer, "null output pointer");
    }
    *out = v;
    IsoStatus::Ok
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Last error message on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn iso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn iso_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a TOML or JSON system specification.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn iso_system_parse(text: *const c_char, out: *mut *mut IsoSystem) -> IsoStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match SystemSpec::parse(text) {
            Ok(spec) => write_out(out, Box::into_raw(Box::new(IsoSystem { spec }))),
            Err(e) => fail(IsoStatus::Parse, e.to_string()),
        }
    })
}

/// Builds `H = Q · (a_0 + a_1 r² + …)` from a polynomial string and `len`
/// rational strings such as `"3/2"`.
///
/// # Safety
/// `q` must be a valid string, `a` must point to `len` valid strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_system_factored(
    q: *const c_char,
    a: *const *const c_char,
    len: size_t,
    out: *mut *mut IsoSystem,
) -> IsoStatus {
    guard(|| {
        let q = match read_str(q) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let q: BivarPoly = match q.parse() {
            Ok(p) => p,
            Err(e) => return fail(IsoStatus::Parse, format!("Q: {e}")),
        };
        if a.is_null() && len > 0 {
            return fail(IsoStatus::NullPointer, "null coefficient array");
        }
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let s = match read_str(*a.add(i)) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_rational(s.trim()) {
                Ok(r) => coeffs.push(r),
                Err(_) => return fail(IsoStatus::Parse, format!("bad coefficient {s:?}")),
            }
        }
        match FactoredSystem::new(q, coeffs) {
            Ok(f) => write_out(
                out,
                Box::into_raw(Box::new(IsoSystem {
                    spec: SystemSpec {
                        name: None,
                        form: SystemForm::Factored(f),
                        settings: Settings::default(),
                    },
                })),
            ),
            Err(e) => fail(IsoStatus::Parse, e.to_string()),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn iso_system_free(s: *mut IsoSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// `H` as a polynomial string; free with [`iso_string_free`]. NULL on error.
///
/// # Safety
/// `s` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn iso_system_to_string(s: *const IsoSystem) -> *mut c_char {
    match system(s) {
        Ok(s) => into_c_string(s.spec.uniform().h().to_string()),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn iso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact center test.
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_is_center(s: *const IsoSystem, out: *mut bool) -> IsoStatus {
    guard(|| match system(s).and_then(factored) {
        Ok(f) => write_out(out, is_center(&f)),
        Err(e) => e,
    })
}

/// Number of unbounded boundary trajectories of the center region.
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_nu(s: *const IsoSystem, out: *mut u32) -> IsoStatus {
    guard(|| {
        let f = match system(s).and_then(factored) {
            Ok(f) => f,
            Err(e) => return e,
        };
        if !is_center(&f) {
            return fail(IsoStatus::NotACenter, "the mean of Q over the circle is nonzero");
        }
        match classify(&f) {
            Ok(r) => write_out(out, r.nu as u32),
            Err(e) => fail(IsoStatus::Analysis, e.to_string()),
        }
    })
}

/// Boundary radius of the center region along `theta`; `INFINITY` when unbounded.
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_boundary_radius(s: *const IsoSystem, theta: c_double, out: *mut c_double) -> IsoStatus {
    guard(|| {
        let f = match system(s).and_then(factored) {
            Ok(f) => f,
            Err(e) => return e,
        };
        if !is_center(&f) {
            return fail(IsoStatus::NotACenter, "the mean of Q over the circle is nonzero");
        }
        match boundary_radius(&f, theta) {
            Ok(BoundaryRadius::Finite(r)) => write_out(out, r),
            Ok(BoundaryRadius::Infinite) => write_out(out, f64::INFINITY),
            Err(e) => fail(IsoStatus::Analysis, e.to_string()),
        }
    })
}

/// `ρ(2π)` for the solution starting at `rho0` on the positive `x` axis.
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_return_map(
    s: *const IsoSystem,
    rho0: c_double,
    tol: c_double,
    out: *mut c_double,
) -> IsoStatus {
    guard(|| {
        let s = match system(s) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match return_map(&s.spec.uniform(), rho0, tol) {
            Ok(r) => write_out(out, r),
            Err(e) => fail(IsoStatus::Analysis, e.to_string()),
        }
    })
}

/// Full JSON report with the spec's settings; free with [`iso_string_free`].
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iso_analyze_json(s: *const IsoSystem, out: *mut *mut c_char) -> IsoStatus {
    guard(|| {
        let s = match system(s) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let settings = Settings::default().resolve(&s.spec.settings);
        write_out(out, into_c_string(analyze(&s.spec, &settings).to_json()))
    })
}
