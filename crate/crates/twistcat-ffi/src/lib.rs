//! C ABI over the twistcat core.
//!
//! Every function returns a [`TwistcatStatus`]. Results come back through out-pointers; strings
//! are NUL-terminated UTF-8 JSON owned by the caller and released with [`twistcat_string_free`].
//! After a non-OK status, [`twistcat_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::path::Path;

use twistcat::cli::{self, SuperchargeInput};
use twistcat::susy::{self, AuxCount, Supercharge};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistcatStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Unsupported = 4,
    Failed = 5,
    Panic = 6,
}

/// Opaque supercharge handle.
pub struct TwistcatSupercharge {
    q: Supercharge,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TwistcatStatus, String);

fn set_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("NUL bytes removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure> + UnwindSafe) -> TwistcatStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_error(None);
            TwistcatStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(Some(message));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            TwistcatStatus::Panic
        }
    }
}

fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TwistcatStatus::NullArgument, format!("{name} is null")));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|e| Failure(TwistcatStatus::InvalidUtf8, format!("{name}: {e}")))
}

fn check_out<T>(p: *mut T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure(TwistcatStatus::NullArgument, format!("{name} is null")));
    }
    Ok(())
}

fn put<T>(p: *mut T, value: T) {
    // SAFETY: `p` passed `check_out` and is writable for the duration of the call.
    unsafe { p.write(value) }
}

fn handle<'a>(p: *const TwistcatSupercharge) -> Result<&'a Supercharge, Failure> {
    // SAFETY: handles come from twistcat_supercharge_from_json and are not yet freed.
    unsafe { p.as_ref() }
        .map(|h| &h.q)
        .ok_or_else(|| Failure(TwistcatStatus::NullArgument, "supercharge is null".into()))
}

fn parse_aux(aux: *const c_char) -> Result<AuxCount, Failure> {
    text(aux, "aux")?.parse().map_err(|e: susy::SusyError| Failure(TwistcatStatus::InvalidInput, format!("aux: {e}")))
}

fn write_json<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> Result<(), Failure> {
    check_out(out, "out")?;
    let json = serde_json::to_string(value).map_err(|e| Failure(TwistcatStatus::Failed, e.to_string()))?;
    put(out, CString::new(json).expect("JSON has no NUL bytes").into_raw());
    Ok(())
}

fn cli_failure(e: cli::CliError) -> Failure {
    let status = if e.exit_code() == cli::EXIT_USAGE { TwistcatStatus::InvalidInput } else { TwistcatStatus::Failed };
    Failure(status, e.to_string())
}

/// Parse a supercharge of the standard algebra `(dim, aux)` from the JSON accepted by
/// `twistcat classify --in`. `aux` reads like `"N=2"` or `"N=(1,1)"`.
///
/// # Safety
/// `aux` and `json` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistcat_supercharge_from_json(
    dim: usize,
    aux: *const c_char,
    json: *const c_char,
    out: *mut *mut TwistcatSupercharge,
) -> TwistcatStatus {
    guard(|| {
        check_out(out, "out")?;
        let aux = parse_aux(aux)?;
        if !(1..=10).contains(&dim) {
            return Err(Failure(TwistcatStatus::Unsupported, format!("dimension {dim} is outside 1..=10")));
        }
        let input: SuperchargeInput = serde_json::from_str(text(json, "json")?)
            .map_err(|e| Failure(TwistcatStatus::InvalidInput, e.to_string()))?;
        let q = cli::supercharge_from_input(dim, aux, &input, Path::new("<json>")).map_err(cli_failure)?;
        put(out, Box::into_raw(Box::new(TwistcatSupercharge { q })));
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `q` is null or a live handle, and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn twistcat_supercharge_free(q: *mut TwistcatSupercharge) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistcat_supercharge_is_square_zero(
    q: *const TwistcatSupercharge,
    out: *mut bool,
) -> TwistcatStatus {
    guard(|| {
        let q = handle(q)?;
        check_out(out, "out")?;
        put(out, susy::is_square_zero(q));
        Ok(())
    })
}

/// Classification as JSON, in the shape of `twistcat classify`.
///
/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistcat_classify(q: *const TwistcatSupercharge, out: *mut *mut c_char) -> TwistcatStatus {
    guard(|| {
        let r = cli::classify_supercharge(handle(q)?).map_err(cli_failure)?;
        write_json(&r, out)
    })
}

/// Abelian section as JSON, in the shape of `twistcat section`.
///
/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn twistcat_section(q: *const TwistcatSupercharge, out: *mut *mut c_char) -> TwistcatStatus {
    guard(|| write_json(&cli::section_of(handle(q)?), out))
}

/// Catalogue replay report for one algebra as JSON. `passed` reports the verdict.
///
/// # Safety
/// `aux` is a NUL-terminated string; `out` and `passed` are writable.
#[no_mangle]
pub unsafe extern "C" fn twistcat_verify_catalogue(
    dim: usize,
    aux: *const c_char,
    samples: usize,
    seed: u64,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> TwistcatStatus {
    guard(|| {
        let aux = parse_aux(aux)?;
        check_out(passed, "passed")?;
        check_out(out, "out")?;
        let r = twistcat::catalogue::verify_catalogue(dim, aux, samples, seed).map_err(|e| {
            let status = match e {
                twistcat::catalogue::CatalogueError::Unsupported { .. } => TwistcatStatus::Unsupported,
                _ => TwistcatStatus::Failed,
            };
            Failure(status, e.to_string())
        })?;
        put(passed, r.passed);
        write_json(&r, out)
    })
}

/// Message for the last failure on this thread, or null. Release with [`twistcat_string_free`].
#[no_mangle]
pub extern "C" fn twistcat_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(std::ptr::null_mut(), CString::into_raw))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or came from this library, and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn twistcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn twistcat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
