//! C interface to `lightcone`.
//!
//! Surfaces are opaque `LcSurface` handles. Every function returns an
//! `LcStatus`; on failure the message is kept per thread and can be read
//! back with `lc_last_error`. Results go through out-pointers.

use lightcone::catalog::{self, CatalogKind, CatalogSurface};
use lightcone::classifier::ClassifyOptions;
use lightcone::cli;
use lightcone::cone::HermMatrix;
use lightcone::error::Error;
use lightcone::surfaces::{self, PlaneSpec};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullPointer = 1,
    BadParameter = 2,
    Degenerate = 3,
    NotConverged = 4,
    ParseError = 5,
    Ambiguous = 6,
    NotUnimodular = 7,
    InvalidUtf8 = 8,
    Internal = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcKind {
    EllipticCatenoid = 0,
    HyperbolicCatenoid = 1,
    ParabolicCatenoid = 2,
    Helicoid = 3,
    ConformalHelicoid = 4,
    Horosphere = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LcCensus {
    pub elliptic: usize,
    pub parabolic: usize,
    pub hyperbolic: usize,
    pub helicoid: usize,
}

/// A surface of the catalog.
pub struct LcSurface(CatalogSurface);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LcStatus {
    match e {
        Error::BadParameter(_)
        | Error::ZeroParameter
        | Error::ZeroGenerator
        | Error::ZeroLambda
        | Error::PoleAtMinusHalf => LcStatus::BadParameter,
        Error::DegeneratePoint { .. }
        | Error::DegenerateFrame(_)
        | Error::EmptyIntersection
        | Error::SingularSample(_) => LcStatus::Degenerate,
        Error::NonConvergent(_) | Error::FitResidualExceeded { .. } => LcStatus::NotConverged,
        Error::ParseError { .. } => LcStatus::ParseError,
        Error::AmbiguousBranch(_) => LcStatus::Ambiguous,
        Error::NonUnimodular(_) => LcStatus::NotUnimodular,
        _ => LcStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (LcStatus, String)>) -> LcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LcStatus::Ok,
        Ok(Err((st, msg))) => {
            set_error(msg);
            st
        }
        Err(_) => {
            set_error("panic inside lightcone".into());
            LcStatus::Internal
        }
    }
}

fn lib<T>(r: lightcone::error::Result<T>) -> Result<T, (LcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (LcStatus, String) {
    (LcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn surface_ref<'a>(s: *const LcSurface) -> Result<&'a LcSurface, (LcStatus, String)> {
    s.as_ref().ok_or_else(null)
}

fn write_coords(out: *mut f64, x: &HermMatrix) -> Result<(), (LcStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = x.coords();
    unsafe { ptr::copy_nonoverlapping(c.as_ptr(), out, 4) };
    Ok(())
}

fn put<T>(out: *mut T, v: T) -> Result<(), (LcStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    unsafe { out.write(v) };
    Ok(())
}

/// Builds a catalog surface. `kind` is an `LcKind` value; `p0` and `p1`
/// are its parameters (a, b or c) and unused ones are ignored.
///
/// # Safety
/// `out` must be a valid pointer. The handle is released with `lc_surface_free`.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_new(
    kind: u32,
    p0: f64,
    p1: f64,
    out: *mut *mut LcSurface,
) -> LcStatus {
    guard(|| {
        let k = match kind {
            0 => CatalogKind::EllipticCatenoid(p0),
            1 => CatalogKind::HyperbolicCatenoid(p0),
            2 => CatalogKind::ParabolicCatenoid(p0),
            3 => CatalogKind::Helicoid(p0, p1),
            4 => CatalogKind::ConformalHelicoid(p0),
            5 => CatalogKind::Horosphere,
            _ => {
                return Err((
                    LcStatus::BadParameter,
                    format!("unknown surface kind {kind}"),
                ))
            }
        };
        if out.is_null() {
            return Err(null());
        }
        let s = lib(catalog::build(k))?;
        put(out, Box::into_raw(Box::new(LcSurface(s))))
    })
}

/// Flat surface ⟨M, X⟩ = q with `m` the four coordinates of a null M.
///
/// # Safety
/// `m` must point at 4 doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_new_plane(
    m: *const f64,
    q: f64,
    out: *mut *mut LcSurface,
) -> LcStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return Err(null());
        }
        let c = std::slice::from_raw_parts(m, 4);
        let spec = PlaneSpec {
            m: HermMatrix::new(c[0], c[1], c[2], c[3]),
            q,
        };
        let s = lib(catalog::build(CatalogKind::Plane(spec)))?;
        put(out, Box::into_raw(Box::new(LcSurface(s))))
    })
}

/// # Safety
/// `s` must come from `lc_surface_new*` and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_free(s: *mut LcSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Parameter domain `[u0, u1, v0, v1]`.
///
/// # Safety
/// `out` must point at 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_domain(s: *const LcSurface, out: *mut f64) -> LcStatus {
    guard(|| {
        let s = surface_ref(s)?;
        if out.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(s.0.immersion.domain.as_ptr(), out, 4);
        Ok(())
    })
}

/// Point X(u, v) as coordinates (x0, x1, x2, x3).
///
/// # Safety
/// `out` must point at 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_point(
    s: *const LcSurface,
    u: f64,
    v: f64,
    out: *mut f64,
) -> LcStatus {
    guard(|| {
        let s = surface_ref(s)?;
        write_coords(out, &s.0.immersion.point(u, v))
    })
}

/// Mean and Gaussian curvature at (u, v).
///
/// # Safety
/// `h` and `k` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_curvature(
    s: *const LcSurface,
    u: f64,
    v: f64,
    h: *mut f64,
    k: *mut f64,
) -> LcStatus {
    guard(|| {
        let s = surface_ref(s)?;
        if h.is_null() || k.is_null() {
            return Err(null());
        }
        let (_, c) = lib(surfaces::curvatures(&s.0.immersion, u, v))?;
        put(h, c.h)?;
        put(k, c.k)
    })
}

/// Lightlike Gauss map at (u, v) as four coordinates.
///
/// # Safety
/// `out` must point at 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn lc_surface_gauss_map(
    s: *const LcSurface,
    u: f64,
    v: f64,
    out: *mut f64,
) -> LcStatus {
    guard(|| {
        let s = surface_ref(s)?;
        let g = lib(surfaces::lightlike_gauss_map(&s.0.immersion, u, v))?;
        write_coords(out, &g)
    })
}

/// δ(a) on the helicoid cardioid.
///
/// # Safety
/// `re` and `im` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lc_delta_of_a(a: f64, re: *mut f64, im: *mut f64) -> LcStatus {
    guard(|| {
        if !a.is_finite() {
            return Err((LcStatus::BadParameter, format!("a = {a} is not finite")));
        }
        let d = catalog::delta_of_a(a).delta();
        put(re, d.re)?;
        put(im, d.im)
    })
}

/// Catenoids and helicoids in the associated family at |δ| = r.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lc_census(r: f64, out: *mut LcCensus) -> LcStatus {
    guard(|| {
        let c = lib(catalog::census(r))?;
        put(
            out,
            LcCensus {
                elliptic: c.elliptic,
                parabolic: c.parabolic,
                hyperbolic: c.hyperbolic,
                helicoid: c.helicoid,
            },
        )
    })
}

/// Classifies a ruled frame written in the frame-spec language and returns
/// the JSON report in `*out`, to be released with `lc_string_free`.
/// `zero_tol` ≤ 0 selects the default guard band.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lc_classify_spec(
    spec: *const c_char,
    zero_tol: f64,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|e| (LcStatus::InvalidUtf8, e.to_string()))?;
        let opt = if zero_tol > 0.0 {
            ClassifyOptions {
                zero: zero_tol,
                nonzero: 100.0 * zero_tol,
            }
        } else {
            ClassifyOptions::default()
        };
        let js = lib(cli::cmd_classify(text, opt))?;
        let c = CString::new(js).map_err(|e| (LcStatus::Internal, e.to_string()))?;
        put(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len` > 0). Returns the full message length
/// without the terminator, or 0 if the last call succeeded.
///
/// # Safety
/// `buf` must point at `len` writable bytes or be null.
#[no_mangle]
pub unsafe extern "C" fn lc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last() -> String {
        let mut b = vec![0 as c_char; 256];
        unsafe { lc_last_error(b.as_mut_ptr(), b.len()) };
        unsafe { CStr::from_ptr(b.as_ptr()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn status_codes_map() {
        assert_eq!(status_of(&Error::ZeroParameter), LcStatus::BadParameter);
        assert_eq!(
            status_of(&Error::ParseError {
                line: 1,
                column: 1,
                message: String::new()
            }),
            LcStatus::ParseError
        );
        assert_eq!(
            status_of(&Error::NonUnimodular(1.0)),
            LcStatus::NotUnimodular
        );
    }

    #[test]
    fn error_is_kept_per_call() {
        let mut s = ptr::null_mut();
        let st = unsafe { lc_surface_new(LcKind::EllipticCatenoid as u32, 0.0, 0.0, &mut s) };
        assert_eq!(st, LcStatus::BadParameter);
        assert!(s.is_null());
        assert!(!last().is_empty());
        let mut re = 0.0;
        let mut im = 0.0;
        assert_eq!(
            unsafe { lc_delta_of_a(1.0, &mut re, &mut im) },
            LcStatus::Ok
        );
        assert_eq!(last(), "");
    }

    #[test]
    fn truncation() {
        unsafe { lc_surface_point(ptr::null(), 0.0, 0.0, ptr::null_mut()) };
        let mut b = [7 as c_char; 5];
        let n = unsafe { lc_last_error(b.as_mut_ptr(), b.len()) };
        assert_eq!(n, "null pointer argument".len());
        assert_eq!(b[4], 0);
    }
}
