//! C ABI over `toric_kahler`.
//!
//! Every entry point returns a [`TkStatus`]; on failure the message is kept
//! per thread and read back with [`tk_last_error_message`]. Strings handed
//! out are owned by the caller and released with [`tk_string_free`]. Panics
//! never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_kahler::certify::{b_bound_certificate, scalar_positivity_certificate};
use toric_kahler::cli::parse_class;
use toric_kahler::cohomology::enumerate_negative_classes;
use toric_kahler::exact::{parse_rat, to_f64};
use toric_kahler::optimize::{evaluate, minimize_cal_a_dp2, MinimizationResult, Quantity};
use toric_kahler::polytope::{build_polygon, BuildOptions, KahlerParams, SurfaceKind};
use toric_kahler::Error;

/// Result of every call. Zero is success.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConeViolation = 3,
    NotVerified = 4,
    Failure = 5,
    Panic = 6,
}

/// Surface selector: 2 or 3 blown-up points.
pub const TK_SURFACE_DP2: c_int = 2;
pub const TK_SURFACE_DP3: c_int = 3;

/// A Kähler class on one of the two surfaces.
pub struct TkClass {
    kind: SurfaceKind,
    params: KahlerParams,
}

/// Outcome of the 𝓐 minimization.
pub struct TkMinimization {
    result: MinimizationResult,
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

fn status_of(e: &Error) -> TkStatus {
    match e {
        Error::ConeViolation(_) | Error::DegeneratePolygon(_) => TkStatus::ConeViolation,
        Error::NotVerified { .. } | Error::AssertionFailure { .. } => TkStatus::NotVerified,
        Error::Parse(_) | Error::OutOfRange { .. } | Error::DivisionByZero => TkStatus::InvalidArgument,
        _ => TkStatus::Failure,
    }
}

type Call = std::result::Result<(), (TkStatus, String)>;

fn guard(f: impl FnOnce() -> Call) -> TkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TkStatus::Panic
        }
    }
}

fn fail(e: Error) -> (TkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TkStatus, String) {
    (TkStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> std::result::Result<&'a str, (TkStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (TkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn surface(s: c_int) -> std::result::Result<SurfaceKind, (TkStatus, String)> {
    match s {
        TK_SURFACE_DP2 => Ok(SurfaceKind::Dp2),
        TK_SURFACE_DP3 => Ok(SurfaceKind::Dp3),
        _ => Err((TkStatus::InvalidArgument, format!("unknown surface {s}"))),
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> Call {
    let c = CString::new(s).map_err(|_| (TkStatus::Failure, "string contains NUL".to_string()))?;
    // SAFETY: callers check `out` for null first.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn tk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a class: `α,β,γ,δ` on dp3, `β,γ[,δ]` on dp2. Entries are
/// integers, fractions `p/q` or decimals.
///
/// # Safety
/// `text` is a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_class_new(surface_id: c_int, text: *const c_char, out: *mut *mut TkClass) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = surface(surface_id)?;
        let text = read_str(text, "text")?;
        let params = parse_class(kind, text).map_err(fail)?;
        if !params.in_cone(kind) {
            return Err((TkStatus::ConeViolation, format!("{params} is outside the Kähler cone of {kind}")));
        }
        *out = Box::into_raw(Box::new(TkClass { kind, params }));
        Ok(())
    })
}

/// # Safety
/// `class` is null or came from [`tk_class_new`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn tk_class_free(class: *mut TkClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Evaluates one quantity (`V`, `s0`, `F1`, `F2`, `calT`, `calB`, `calA`,
/// `smin`, `smax`, `corner`). `exact` receives the exact value as a string,
/// `value` its double rendering; either may be null.
///
/// # Safety
/// Pointers are null or valid; `class` came from [`tk_class_new`].
#[no_mangle]
pub unsafe extern "C" fn tk_class_eval(
    class: *const TkClass,
    quantity: *const c_char,
    exact: *mut *mut c_char,
    value: *mut c_double,
) -> TkStatus {
    guard(|| {
        let class = class.as_ref().ok_or_else(|| null("class"))?;
        let q = Quantity::parse(read_str(quantity, "quantity")?).map_err(fail)?;
        let v = evaluate(class.kind, &class.params, &[q]).map_err(fail)?.remove(0);
        if !value.is_null() {
            *value = v.float;
        }
        if !exact.is_null() {
            give_string(v.exact, exact)?;
        }
        Ok(())
    })
}

/// Moment polygon as text: exact vertices, then edge normals and lattice
/// lengths.
///
/// # Safety
/// `class` came from [`tk_class_new`]; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn tk_class_polygon(class: *const TkClass, out: *mut *mut c_char) -> TkStatus {
    guard(|| {
        let class = class.as_ref().ok_or_else(|| null("class"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let poly = build_polygon(class.kind, &class.params, BuildOptions::default()).map_err(fail)?;
        give_string(poly.to_string(), out)
    })
}

/// Builds and checks a certificate: `up1`, `up2`, `pos2` or `pos3`.
/// Returns `NotVerified` when it fails; `summary` (nullable) gets a one-line
/// report either way.
///
/// # Safety
/// `lemma` is a valid C string; `summary` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn tk_verify(lemma: *const c_char, summary: *mut *mut c_char) -> TkStatus {
    guard(|| {
        let cert = match read_str(lemma, "lemma")? {
            "up1" => b_bound_certificate(SurfaceKind::Dp2),
            "up2" => b_bound_certificate(SurfaceKind::Dp3),
            "pos2" => scalar_positivity_certificate(SurfaceKind::Dp2),
            "pos3" => scalar_positivity_certificate(SurfaceKind::Dp3),
            other => return Err((TkStatus::InvalidArgument, format!("unknown lemma `{other}`"))),
        };
        if !summary.is_null() {
            give_string(cert.summary(), summary)?;
        }
        if cert.verified {
            Ok(())
        } else {
            Err((TkStatus::NotVerified, cert.summary()))
        }
    })
}

/// Integral classes with A² = −k and c₁·A = 2 − k, as newline-separated
/// `(n; a1,…)` coefficient tuples. `count` (nullable) receives their number.
///
/// # Safety
/// `out` is valid; `count` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn tk_enumerate_classes(
    surface_id: c_int,
    k: i64,
    out: *mut *mut c_char,
    count: *mut usize,
) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let list = enumerate_negative_classes(surface(surface_id)?, k).map_err(fail)?;
        if !count.is_null() {
            *count = list.len();
        }
        let text: Vec<String> = list.iter().map(ToString::to_string).collect();
        give_string(text.join("\n"), out)
    })
}

/// Minimizes 𝓐 on the two-point blow-up to bracket width `tolerance`
/// (a rational string such as `1/100000000`).
///
/// # Safety
/// `tolerance` is a valid C string; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn tk_minimize_dp2(tolerance: *const c_char, out: *mut *mut TkMinimization) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let tol = parse_rat(read_str(tolerance, "tolerance")?).map_err(fail)?;
        let result = minimize_cal_a_dp2(&tol).map_err(fail)?;
        *out = Box::into_raw(Box::new(TkMinimization { result }));
        Ok(())
    })
}

/// # Safety
/// `m` is null or came from [`tk_minimize_dp2`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn tk_minimization_free(m: *mut TkMinimization) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Witness β (= γ, with δ = 1) and 𝓐 there; outputs are nullable.
///
/// # Safety
/// `m` came from [`tk_minimize_dp2`]; other pointers are null or valid.
#[no_mangle]
pub unsafe extern "C" fn tk_minimization_value(
    m: *const TkMinimization,
    beta: *mut c_double,
    cal_a: *mut c_double,
    cal_a_exact: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        let r = &m.as_ref().ok_or_else(|| null("minimization"))?.result;
        if !beta.is_null() {
            *beta = to_f64(&r.params_star.beta);
        }
        if !cal_a.is_null() {
            *cal_a = to_f64(&r.cal_a_star);
        }
        if !cal_a_exact.is_null() {
            give_string(r.cal_a_star.to_string(), cal_a_exact)?;
        }
        Ok(())
    })
}

/// 1 when every check passed: 𝓐 < 29/4, inside Y, symmetry, sign change
/// of both partials, and the grid found nothing smaller.
///
/// # Safety
/// `m` came from [`tk_minimize_dp2`]; `certified` is valid.
#[no_mangle]
pub unsafe extern "C" fn tk_minimization_certified(m: *const TkMinimization, certified: *mut c_int) -> TkStatus {
    guard(|| {
        let r = &m.as_ref().ok_or_else(|| null("minimization"))?.result;
        if certified.is_null() {
            return Err(null("certified"));
        }
        let ok = r.certified_below.is_some() && r.inside_y && r.symmetric && r.partials_change_sign && r.grid_clear;
        *certified = c_int::from(ok);
        Ok(())
    })
}
