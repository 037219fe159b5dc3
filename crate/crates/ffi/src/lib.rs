//! C ABI over `gradus`.
//!
//! Every fallible function returns a [`GradusStatus`]; on failure the message is available
//! from [`gradus_last_error`] on the same thread. Strings handed out by the library are
//! owned by the caller and released with [`gradus_string_free`]. Handles are released with
//! their matching `_free` function. No function unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gradus::arith::FieldSpec;
use gradus::lie::{chevalley_algebra, ChevalleyAlgebra};
use gradus::report::Status;
use gradus::roots::{JSubset, RootSystem, RootType};
use gradus::structurable::{
    find_unit_pair, kappa, StructurableAlgebra, StructurableJson, UnitPairOptions,
};
use gradus::Error;
use serde_json::json;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradusStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was rejected (bad type, rank, field, subset, JSON, usage).
    InvalidInput = 3,
    /// The input was well formed but failed a verification.
    VerificationFailed = 4,
    /// An internal error; the library state is still usable.
    Internal = 5,
}

/// A Chevalley-basis Lie algebra over a chosen field.
pub struct GradusLieAlgebra {
    inner: ChevalleyAlgebra,
}

/// A validated structurable algebra.
pub struct GradusStructurable {
    inner: StructurableAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(GradusStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::StructIdFails(_)
            | Error::EqDefFails(_)
            | Error::NotUnital(_)
            | Error::NotInvolution(_)
            | Error::JacobiFails(..)
            | Error::NotAntisymmetric(..) => GradusStatus::VerificationFailed,
            _ => GradusStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

/// Run `f`, record any error, and translate panics into [`GradusStatus::Internal`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GradusStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GradusStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            GradusStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            GradusStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GradusStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(
            GradusStatus::NullArgument,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    s.parse::<T>().map_err(Failure::from)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(GradusStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string(v).map_err(|e| Failure(GradusStatus::Internal, e.to_string()))?;
    write_string(out, s)
}

unsafe fn lie<'a>(h: *const GradusLieAlgebra) -> Result<&'a ChevalleyAlgebra, Failure> {
    h.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(GradusStatus::NullArgument, "algebra handle is null".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gradus_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, or null. Valid until the next call
/// into the library on the same thread.
#[no_mangle]
pub extern "C" fn gradus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gradus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the Chevalley algebra of type `type_label` (`"A"`..`"G"`) and `rank` over `field`
/// (`"Q"`, `"GF5"`, `"GF(7)"`, ...).
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_chevalley_new(
    type_label: *const c_char,
    rank: u32,
    field: *const c_char,
    out: *mut *mut GradusLieAlgebra,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        let ty: RootType = parse(read_str(type_label, "type")?)?;
        let field: FieldSpec = parse(read_str(field, "field")?)?;
        let rs = RootSystem::new(ty, rank as usize)?;
        let inner = chevalley_algebra(&rs, field)?;
        *out = Box::into_raw(Box::new(GradusLieAlgebra { inner }));
        Ok(())
    })
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gradus_lie_dim(h: *const GradusLieAlgebra) -> usize {
    h.as_ref().map_or(0, |h| h.inner.dim())
}

/// Check the Jacobi identity on every basis triple.
///
/// # Safety
/// `h` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_lie_check_jacobi(
    h: *const GradusLieAlgebra,
    passed: *mut bool,
) -> GradusStatus {
    guard(|| {
        check_out(passed)?;
        *passed = lie(h)?.algebra.check_jacobi_exhaustive().passed();
        Ok(())
    })
}

/// Bracket table as JSON (`field`, `dim`, `labels`, `brackets`).
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_lie_to_json(
    h: *const GradusLieAlgebra,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        write_json(out, &lie(h)?.algebra.to_json())
    })
}

/// The grading defined by the comma list `j` of 1-based simple roots, as JSON with the
/// degree of every basis vector, the component dimensions in degrees -2..2 and the grading
/// derivation.
///
/// # Safety
/// `h` must be a live handle; `j` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_lie_grading_json(
    h: *const GradusLieAlgebra,
    j: *const c_char,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        let ch = lie(h)?;
        let subset = JSubset::parse(ch.roots.rank(), read_str(j, "J")?)?;
        let g = ch.grading(&subset)?;
        let zeta = ch.grading_derivation(&subset);
        let v = json!({
            "J": subset.labels(),
            "degrees": g.degrees(),
            "dims": g.dims_with_bound(2),
            "zeta": if zeta.is_in_algebra() { "in-algebra" } else { "outer" },
            "zeta_element": zeta.element(),
        });
        write_json(out, &v)
    })
}

/// Search for `u` of degree 1 and `v` of degree -1 with `[u, v]` acting as the grading
/// derivation of the grading given by `j`. The report is written whether or not a pair is
/// found.
///
/// # Safety
/// `h` must be a live handle; `j` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_lie_unit_pair_json(
    h: *const GradusLieAlgebra,
    j: *const c_char,
    attempts: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        let ch = lie(h)?;
        let subset = JSubset::parse(ch.roots.rank(), read_str(j, "J")?)?;
        let g = ch.grading(&subset)?;
        let zeta = ch.grading_derivation(&subset);
        let opts = UnitPairOptions {
            attempts,
            seed,
            ..Default::default()
        };
        let report = find_unit_pair(&ch.algebra, &g, &zeta, &opts)?;
        write_json(out, &report)
    })
}

/// Release an algebra handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gradus_lie_free(h: *mut GradusLieAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parse and validate a structurable algebra from its JSON form. `field` may be null to
/// keep the field named in the document.
///
/// # Safety
/// `json_text` NUL-terminated; `field` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_structurable_from_json(
    json_text: *const c_char,
    field: *const c_char,
    out: *mut *mut GradusStructurable,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        let parsed: StructurableJson = serde_json::from_str(read_str(json_text, "json")?)
            .map_err(|e| Failure(GradusStatus::InvalidInput, e.to_string()))?;
        let field = if field.is_null() {
            None
        } else {
            Some(parse::<FieldSpec>(read_str(field, "field")?)?)
        };
        let inner = StructurableAlgebra::from_json(&parsed, field)?;
        *out = Box::into_raw(Box::new(GradusStructurable { inner }));
        Ok(())
    })
}

/// Dimension of the structurable algebra, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gradus_structurable_dim(h: *const GradusStructurable) -> usize {
    h.as_ref().map_or(0, |h| h.inner.dim())
}

/// Build K(A) and report block dimensions, the Jacobi check, whether `[1+, 1-]` acts as the
/// grading derivation, and the bracket table. Returns `VerificationFailed` (with the JSON
/// still written) when either check fails.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_structurable_kappa_json(
    h: *const GradusStructurable,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        let a = h
            .as_ref()
            .map(|h| &h.inner)
            .ok_or_else(|| Failure(GradusStatus::NullArgument, "algebra handle is null".into()))?;
        let k = kappa(a)?;
        let jacobi = k.check_jacobi();
        let acts = k.unit_bracket_is_grading_derivation();
        let v = json!({
            "blocks": k.block_dims(),
            "jacobi": jacobi,
            "unit_bracket_is_grading_derivation": acts,
            "kappa": k.to_json(),
        });
        write_json(out, &v)?;
        if jacobi.passed() && acts {
            Ok(())
        } else {
            Err(Failure(
                GradusStatus::VerificationFailed,
                "K(A) check failed".into(),
            ))
        }
    })
}

/// Release a structurable handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gradus_structurable_free(h: *mut GradusStructurable) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Run a command-line invocation (`argv` without the program name, e.g.
/// `{"verify-table", "G", "2"}`) and return its JSON report. `exit_code` receives the code
/// the command-line tool would exit with. The report is written whenever the arguments
/// parse, including when the command rejects its input.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` and `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn gradus_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> GradusStatus {
    guard(|| {
        check_out(out)?;
        check_out(exit_code)?;
        if argv.is_null() && argc > 0 {
            return Err(Failure(GradusStatus::NullArgument, "argv is null".into()));
        }
        let mut words = Vec::with_capacity(argc);
        for i in 0..argc {
            words.push(read_str(*argv.add(i), "argument")?.to_string());
        }
        let report =
            gradus::cli::run_args(words).map_err(|msg| Failure(GradusStatus::InvalidInput, msg))?;
        *exit_code = i32::from(report.status.exit_code());
        write_string(out, report.to_json())?;
        match report.status {
            Status::Ok | Status::Failed => Ok(()),
            Status::Error => {
                let msg = report
                    .result
                    .get("error")
                    .and_then(|e| e.as_str())
                    .unwrap_or("error");
                Err(Failure(GradusStatus::InvalidInput, msg.to_string()))
            }
        }
    })
}
