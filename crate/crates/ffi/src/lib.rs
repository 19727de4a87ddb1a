//! C ABI over `xiaudit`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Strings returned through `char **`
//! are NUL-terminated and released with [`xiaudit_string_free`]. On any
//! status other than `XI_STATUS_OK` a message is available from
//! [`xiaudit_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use xiaudit::audit::{run_audit, to_json, AuditConfig, Scope};
use xiaudit::ball::{ComplexBall, Mag, RealBall};
use xiaudit::special::{gamma_at, psi_at, xi_at, zeta_at};
use xiaudit::sums::sum_lambda_power;
use xiaudit::zeros::{load_catalog, parse_zero_table, ZeroCatalog, CATALOG_MAGIC};
use xiaudit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    Domain = 3,
    PrecisionExhausted = 4,
    Validation = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiFunction {
    Zeta = 0,
    Gamma = 1,
    Xi = 2,
    Psi = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiPart {
    Real = 0,
    Imag = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiScope {
    Section4 = 0,
    Section5 = 1,
    All = 2,
}

/// Complex enclosure.
pub struct XiBall(ComplexBall);

/// Zero catalog.
pub struct XiCatalog(ZeroCatalog);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> XiStatus {
    match e {
        Error::InvalidArgument(_) => XiStatus::InvalidArgument,
        Error::MalformedLine { .. } | Error::VersionMismatch(_) | Error::ChecksumMismatch => XiStatus::Parse,
        Error::Io(_) => XiStatus::Io,
        Error::PrecisionExhausted { .. } => XiStatus::PrecisionExhausted,
        Error::NonMonotonicOrdinates { .. }
        | Error::OrdinateTooSmall { .. }
        | Error::NoSignChange(_)
        | Error::TailValidation { .. } => XiStatus::Validation,
        _ => XiStatus::Domain,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> XiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            XiStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            XiStatus::Panic
        }
    }
}

fn null_arg(name: &str) -> Error {
    Error::InvalidArgument(format!("{name} is null"))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::InvalidArgument(format!("{name} is not UTF-8")))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), Error> {
    let c = CString::new(s).map_err(|_| Error::InvalidArgument("string contains NUL".into()))?;
    // SAFETY: callers check `out` for null before reaching here
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn xiaudit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Evaluate `f` at `re + i*im` (decimal strings; `im` may be null) with
/// `prec` bits.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_eval(
    f: XiFunction,
    re: *const c_char,
    im: *const c_char,
    prec: u32,
    out: *mut *mut XiBall,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        xiaudit::ball::check_prec(prec)?;
        let re = RealBall::from_decimal(str_arg(re, "re")?, prec)?;
        let im = if im.is_null() {
            RealBall::zero(prec)
        } else {
            RealBall::from_decimal(str_arg(im, "im")?, prec)?
        };
        let s = ComplexBall::new(re, im);
        let v = match f {
            XiFunction::Zeta => zeta_at(&s, prec)?,
            XiFunction::Gamma => gamma_at(&s, prec)?,
            XiFunction::Xi => xi_at(&s, prec)?,
            XiFunction::Psi => {
                if !(s.im.is_exact() && s.im.mid().is_zero()) {
                    return Err(Error::DomainViolation("psi takes a real argument".into()));
                }
                ComplexBall::from_real(psi_at(&s.re, prec)?)
            }
        };
        *out = Box::into_raw(Box::new(XiBall(v)));
        Ok(())
    })
}

/// Midpoint and radius of one part of `ball` as decimal strings.
///
/// # Safety
/// `ball` must come from this library; `mid` and `rad` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_ball_part(
    ball: *const XiBall,
    part: XiPart,
    mid: *mut *mut c_char,
    rad: *mut *mut c_char,
) -> XiStatus {
    guard(|| {
        let b = ball.as_ref().ok_or_else(|| null_arg("ball"))?;
        if mid.is_null() || rad.is_null() {
            return Err(null_arg("mid/rad"));
        }
        let r = match part {
            XiPart::Real => &b.0.re,
            XiPart::Imag => &b.0.im,
        };
        let digits = ((r.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
        give_string(r.mid_string(Some(digits)), mid)?;
        give_string(r.rad().to_string(), rad)
    })
}

/// Upper bound on the radius of one part as a double.
///
/// # Safety
/// `ball` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_ball_radius(ball: *const XiBall, part: XiPart) -> f64 {
    match ball.as_ref() {
        Some(b) => match part {
            XiPart::Real => b.0.re.rad().to_f64(),
            XiPart::Imag => b.0.im.rad().to_f64(),
        },
        None => f64::NAN,
    }
}

/// # Safety
/// `ball` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_ball_free(ball: *mut XiBall) {
    if !ball.is_null() {
        drop(Box::from_raw(ball));
    }
}

/// Parse a plain ordinate table held in memory.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_catalog_parse(
    text: *const c_char,
    accuracy: f64,
    out: *mut *mut XiCatalog,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let text = str_arg(text, "text")?;
        let cat = parse_zero_table(text.as_bytes(), &accuracy_mag(accuracy)?, "memory")?;
        *out = Box::into_raw(Box::new(XiCatalog(cat)));
        Ok(())
    })
}

/// Load a plain ordinate table or a saved catalog from `path`.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_catalog_load(
    path: *const c_char,
    accuracy: f64,
    out: *mut *mut XiCatalog,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let path = Path::new(str_arg(path, "path")?);
        let bytes = std::fs::read(path)?;
        let cat = if bytes.starts_with(CATALOG_MAGIC.as_bytes()) {
            load_catalog(path)?
        } else {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            parse_zero_table(&bytes[..], &accuracy_mag(accuracy)?, &name)?
        };
        *out = Box::into_raw(Box::new(XiCatalog(cat)));
        Ok(())
    })
}

fn accuracy_mag(a: f64) -> Result<Mag, Error> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument("accuracy must be positive".into()));
    }
    Ok(Mag::from_f64(a))
}

/// Number of entries; 0 for null.
///
/// # Safety
/// `cat` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_catalog_len(cat: *const XiCatalog) -> usize {
    cat.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `cat` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_catalog_free(cat: *mut XiCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Sum of `lambda_m^power` (power 1 or 2) with its certified tail.
///
/// # Safety
/// `cat` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_sum_lambda_power(
    cat: *const XiCatalog,
    power: u32,
    slack: f64,
    prec: u32,
    out: *mut *mut XiBall,
) -> XiStatus {
    guard(|| {
        let cat = cat.as_ref().ok_or_else(|| null_arg("catalog"))?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let r = sum_lambda_power(&cat.0, power, slack, prec)?;
        *out = Box::into_raw(Box::new(XiBall(ComplexBall::from_real(r.enclosure))));
        Ok(())
    })
}

/// Audit report as JSON. `cat` may be null for `XI_SCOPE_SECTION5`.
/// `prec_cap` of 0 keeps the default.
///
/// # Safety
/// `cat` must be null or come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_audit_json(
    scope: XiScope,
    cat: *const XiCatalog,
    prec_cap: u32,
    out: *mut *mut c_char,
) -> XiStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let mut cfg = AuditConfig::default();
        if prec_cap != 0 {
            xiaudit::ball::check_prec(prec_cap)?;
            cfg.prec_cap = prec_cap;
        }
        let scope = match scope {
            XiScope::Section4 => Scope::Section4,
            XiScope::Section5 => Scope::Section5,
            XiScope::All => Scope::All,
        };
        let report = run_audit(scope, cat.as_ref().map(|c| &c.0), &cfg)?;
        give_string(to_json(&report), out)?;
        if !report.exhausted.is_empty() {
            return Err(Error::PrecisionExhausted {
                target: "audit width".into(),
                cap: cfg.prec_cap,
            });
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn xiaudit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
