//! C interface to `fibercone`.
//!
//! Every function returns an [`FcStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function, and strings returned to the caller are released with
//! [`fc_string_free`]. After a failure, [`fc_last_error`] describes it
//! (per thread, valid until the next call on that thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fibercone::config::{Problem, RunConfig, CONFIG_VERSION};
use fibercone::groupring::CohomClass;
use fibercone::pipeline::{analyze_class, scan, ClassReport, ScanReport, Settings};
use fibercone::reportio::{self, PlotStyle};
use fibercone::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotInCone = 3,
    NotPrimitive = 4,
    PrecisionCeiling = 5,
    Verification = 6,
    Io = 7,
    Failed = 8,
    Panic = 9,
}

/// A Teichmüller polynomial with its cone.
pub struct FcProblem(Problem);

/// Analysis of one class.
pub struct FcReport(ClassReport);

/// Results of a scan.
pub struct FcScan(ScanReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FcStatus {
    match e.root() {
        Error::NotInCone(_) => FcStatus::NotInCone,
        Error::NotPrimitive(_) => FcStatus::NotPrimitive,
        Error::PrecisionCeiling(_) => FcStatus::PrecisionCeiling,
        Error::Verification(_) => FcStatus::Verification,
        Error::Io(_) => FcStatus::Io,
        Error::Config(_)
        | Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::ZeroVector
        | Error::NonPositiveBound(_)
        | Error::InvalidCone(_) => FcStatus::InvalidArgument,
        _ => FcStatus::Failed,
    }
}

struct Fail(FcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(FcStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FcStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(FcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

fn bytes_string(b: Vec<u8>) -> *mut c_char {
    owned_string(String::from_utf8(b).expect("emitters produce UTF-8"))
}

/// `f64` just below an exact value that was rounded to nearest.
fn down(x: f64) -> f64 {
    if x.is_finite() {
        x - x.abs() * f64::EPSILON - f64::MIN_POSITIVE
    } else {
        x
    }
}

fn up(x: f64) -> f64 {
    if x.is_finite() {
        x + x.abs() * f64::EPSILON + f64::MIN_POSITIVE
    } else {
        x
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL.
#[no_mangle]
pub extern "C" fn fc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in example (`"hironaka1"`, `"hironaka2"`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_problem_builtin(name: *const c_char, out: *mut *mut FcProblem) -> FcStatus {
    guard(|| {
        let name = text(name, "name")?;
        let cfg = RunConfig {
            version: CONFIG_VERSION,
            builtin: Some(name.to_string()),
            ..RunConfig::default()
        };
        let p = Box::new(FcProblem(cfg.problem()?));
        put(out, Box::into_raw(p), "out")
    })
}

/// Builds a problem from the polynomial and cone keys of a TOML run
/// configuration.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_problem_from_toml(toml: *const c_char, out: *mut *mut FcProblem) -> FcStatus {
    guard(|| {
        let cfg = RunConfig::parse(text(toml, "toml")?)?;
        let p = Box::new(FcProblem(cfg.problem()?));
        put(out, Box::into_raw(p), "out")
    })
}

/// Dimension of the cone (number of class coordinates).
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_problem_dim(problem: *const FcProblem, out: *mut usize) -> FcStatus {
    guard(|| put(out, handle(problem, "problem")?.0.cone.dim(), "out"))
}

/// # Safety
/// `problem` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_problem_free(problem: *mut FcProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Analyzes the class with coordinates `coords[0..len]`. A
/// `precision_bits` of 0 keeps the default ceiling.
///
/// # Safety
/// `problem` must be a live handle, `coords` must point to `len` values,
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_analyze(
    problem: *const FcProblem,
    coords: *const i64,
    len: usize,
    precision_bits: u32,
    out: *mut *mut FcReport,
) -> FcStatus {
    guard(|| {
        let p = &handle(problem, "problem")?.0;
        if coords.is_null() {
            return Err(null("coords"));
        }
        let alpha = CohomClass::new(std::slice::from_raw_parts(coords, len).to_vec());
        if alpha.dim() != p.cone.dim() {
            return Err(Fail(
                FcStatus::InvalidArgument,
                format!("class has {} coordinates, the cone needs {}", alpha.dim(), p.cone.dim()),
            ));
        }
        let mut settings = Settings::default();
        if precision_bits != 0 {
            settings.precision.ceiling_bits = precision_bits;
        }
        let r = analyze_class(&p.theta, &p.cone, &alpha, &settings)?;
        put(out, Box::into_raw(Box::new(FcReport(r))), "out")
    })
}

/// # Safety
/// `report` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_report_free(report: *mut FcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Whether the trace field of the stretch factor is totally real.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_report_totally_real(report: *const FcReport, out: *mut bool) -> FcStatus {
    guard(|| put(out, handle(report, "report")?.0.poly.totally_real, "out"))
}

/// Outward-rounded `f64` bounds of the stretch factor.
///
/// # Safety
/// `report` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_report_lambda(report: *const FcReport, lo: *mut f64, hi: *mut f64) -> FcStatus {
    guard(|| {
        let l = &handle(report, "report")?.0.poly.lambda.re;
        let m = fibercone::rootbox::MeasureInterval::new(l.lo.clone(), l.hi.clone());
        put(lo, down(m.lo_f64()), "lo")?;
        put(hi, up(m.hi_f64()), "hi")
    })
}

/// Outward-rounded `f64` bounds of the Mahler measure of the minimal
/// polynomial.
///
/// # Safety
/// `report` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_report_mahler(report: *const FcReport, lo: *mut f64, hi: *mut f64) -> FcStatus {
    guard(|| {
        let m = &handle(report, "report")?.0.poly.mahler;
        put(lo, down(m.lo_f64()), "lo")?;
        put(hi, up(m.hi_f64()), "hi")
    })
}

/// Degree of the minimal polynomial of the stretch factor.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_report_minpoly_degree(report: *const FcReport, out: *mut usize) -> FcStatus {
    guard(|| put(out, handle(report, "report")?.0.poly.minpoly.deg(), "out"))
}

/// Minimal polynomial as text, e.g. `t^2 - 3*t + 1`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable. Free the
/// string with `fc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fc_report_minpoly(report: *const FcReport, out: *mut *mut c_char) -> FcStatus {
    guard(|| put(out, owned_string(handle(report, "report")?.0.poly.minpoly.to_string()), "out"))
}

/// Factorization of the specialization as text.
///
/// # Safety
/// As for `fc_report_minpoly`.
#[no_mangle]
pub unsafe extern "C" fn fc_report_factorization(report: *const FcReport, out: *mut *mut c_char) -> FcStatus {
    guard(|| put(out, owned_string(handle(report, "report")?.0.poly.factorization.to_string()), "out"))
}

/// The whole report as JSON with exact rational bounds.
///
/// # Safety
/// As for `fc_report_minpoly`.
#[no_mangle]
pub unsafe extern "C" fn fc_report_json(report: *const FcReport, out: *mut *mut c_char) -> FcStatus {
    guard(|| {
        let r = &handle(report, "report")?.0;
        let s = serde_json::to_string_pretty(r).expect("reports serialize");
        put(out, owned_string(s), "out")
    })
}

/// Scans every primitive class with `0 < height < bound`. `workers` 0
/// means available parallelism.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_scan(
    problem: *const FcProblem,
    bound: i64,
    workers: usize,
    out: *mut *mut FcScan,
) -> FcStatus {
    guard(|| {
        let p = &handle(problem, "problem")?.0;
        let settings = Settings {
            workers,
            ..Settings::default()
        };
        let mut r = scan(&p.theta, &p.cone, p.height_index, bound, &settings)?;
        r.config.name = p.name.clone();
        put(out, Box::into_raw(Box::new(FcScan(r))), "out")
    })
}

/// # Safety
/// `scan` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_scan_free(scan: *mut FcScan) {
    if !scan.is_null() {
        drop(Box::from_raw(scan));
    }
}

/// Number of classes and the verdict counts of a scan.
///
/// # Safety
/// `scan` must be a live handle; every out pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_scan_counts(
    scan: *const FcScan,
    total: *mut usize,
    totally_real: *mut usize,
    not_totally_real: *mut usize,
    errors: *mut usize,
) -> FcStatus {
    guard(|| {
        let s = &handle(scan, "scan")?.0.summary;
        put(total, s.total, "total")?;
        put(totally_real, s.totally_real, "totally_real")?;
        put(not_totally_real, s.not_totally_real, "not_totally_real")?;
        put(errors, s.errors, "errors")
    })
}

/// Scan as CSV text.
///
/// # Safety
/// `scan` must be a live handle; `out` must be writable. Free the string
/// with `fc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fc_scan_csv(scan: *const FcScan, out: *mut *mut c_char) -> FcStatus {
    guard(|| put(out, bytes_string(reportio::to_csv(&handle(scan, "scan")?.0)), "out"))
}

/// Scan as JSON text.
///
/// # Safety
/// As for `fc_scan_csv`.
#[no_mangle]
pub unsafe extern "C" fn fc_scan_json(scan: *const FcScan, out: *mut *mut c_char) -> FcStatus {
    guard(|| put(out, bytes_string(reportio::to_json(&handle(scan, "scan")?.0)), "out"))
}

/// Scan plotted as SVG text (2-dimensional cones only).
///
/// # Safety
/// As for `fc_scan_csv`.
#[no_mangle]
pub unsafe extern "C" fn fc_scan_svg(scan: *const FcScan, out: *mut *mut c_char) -> FcStatus {
    guard(|| {
        let svg = reportio::render_svg(&handle(scan, "scan")?.0, &PlotStyle::default())?;
        put(out, bytes_string(svg), "out")
    })
}
