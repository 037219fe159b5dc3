//! The C ABI called from Rust, plus a C program built against the generated header.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gradus_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gradus_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = gradus_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data/structurable")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn chevalley_handle() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            gradus_chevalley_new(c("B").as_ptr(), 3, c("GF7").as_ptr(), &mut h),
            GradusStatus::Ok
        );
        assert_eq!(gradus_lie_dim(h), 21);
        assert!(gradus_last_error().is_null());

        let mut passed = false;
        assert_eq!(gradus_lie_check_jacobi(h, &mut passed), GradusStatus::Ok);
        assert!(passed);

        let mut out = ptr::null_mut();
        assert_eq!(
            gradus_lie_grading_json(h, c("1").as_ptr(), &mut out),
            GradusStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["dims"], serde_json::json!([0, 5, 11, 5, 0]));
        assert_eq!(v["zeta"], "in-algebra");

        assert_eq!(
            gradus_lie_unit_pair_json(h, c("1").as_ptr(), 20, 0, &mut out),
            GradusStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["outcome"]["result"], "found");

        assert_eq!(gradus_lie_to_json(h, &mut out), GradusStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["dim"], 21);
        gradus_lie_free(h);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            gradus_chevalley_new(c("E").as_ptr(), 5, c("Q").as_ptr(), &mut h),
            GradusStatus::InvalidInput
        );
        assert!(h.is_null());
        assert!(last_error().contains("E5"));

        assert_eq!(
            gradus_chevalley_new(c("A").as_ptr(), 2, c("GF3").as_ptr(), &mut h),
            GradusStatus::InvalidInput
        );
        assert_eq!(
            gradus_chevalley_new(ptr::null(), 2, c("Q").as_ptr(), &mut h),
            GradusStatus::NullArgument
        );
        assert_eq!(
            gradus_chevalley_new(c("A").as_ptr(), 2, c("Q").as_ptr(), ptr::null_mut()),
            GradusStatus::NullArgument
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            gradus_chevalley_new(bad.as_ptr().cast(), 2, c("Q").as_ptr(), &mut h),
            GradusStatus::InvalidUtf8
        );

        assert_eq!(
            gradus_chevalley_new(c("A").as_ptr(), 4, c("GF5").as_ptr(), &mut h),
            GradusStatus::Ok
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            gradus_lie_unit_pair_json(h, c("1").as_ptr(), 5, 0, &mut out),
            GradusStatus::InvalidInput
        );
        assert!(out.is_null());
        assert!(last_error().contains("not an element"));
        gradus_lie_free(h);

        assert_eq!(gradus_lie_dim(ptr::null()), 0);
        gradus_lie_free(ptr::null_mut());
        gradus_string_free(ptr::null_mut());
    }
}

#[test]
fn structurable_handle() {
    unsafe {
        let mut h = ptr::null_mut();
        let text = c(&data("m2-transpose.json"));
        assert_eq!(
            gradus_structurable_from_json(text.as_ptr(), c("GF5").as_ptr(), &mut h),
            GradusStatus::Ok
        );
        assert_eq!(gradus_structurable_dim(h), 4);
        let mut out = ptr::null_mut();
        assert_eq!(
            gradus_structurable_kappa_json(h, &mut out),
            GradusStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["blocks"], serde_json::json!([1, 4, 5, 4, 1]));
        assert_eq!(v["jacobi"]["passed"], true);
        gradus_structurable_free(h);

        assert_eq!(
            gradus_structurable_from_json(c("{").as_ptr(), ptr::null(), &mut h),
            GradusStatus::InvalidInput
        );
        let not_unital = r#"{"field":{"kind":"Q"},"dim":2,"unit":["1","1"],
            "mult":[[["1","1"],["0","0"]],[["0","0"],["0","1"]]],
            "involution":[["1","0"],["0","1"]]}"#;
        assert_eq!(
            gradus_structurable_from_json(c(not_unital).as_ptr(), ptr::null(), &mut h),
            GradusStatus::VerificationFailed
        );
    }
}

#[test]
fn run_mirrors_the_command_line() {
    unsafe {
        let words = [c("grade"), c("G"), c("2"), c("--J"), c("2")];
        let argv: Vec<*const c_char> = words.iter().map(|w| w.as_ptr()).collect();
        let mut out = ptr::null_mut();
        let mut code = -1;
        assert_eq!(
            gradus_run(argv.as_ptr(), argv.len(), &mut out, &mut code),
            GradusStatus::Ok
        );
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["result"]["dims"], "1 4 4 4 1");

        let words = [c("grade"), c("G"), c("2"), c("--J"), c("1")];
        let argv: Vec<*const c_char> = words.iter().map(|w| w.as_ptr()).collect();
        assert_eq!(
            gradus_run(argv.as_ptr(), argv.len(), &mut out, &mut code),
            GradusStatus::InvalidInput
        );
        assert_eq!(code, 2);
        assert!(take(out).contains("grading too wide"));

        let words = [c("frobnicate")];
        let argv: Vec<*const c_char> = words.iter().map(|w| w.as_ptr()).collect();
        out = ptr::null_mut();
        assert_eq!(
            gradus_run(argv.as_ptr(), argv.len(), &mut out, &mut code),
            GradusStatus::InvalidInput
        );
        assert!(out.is_null());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(gradus_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// `target/<profile>/`, the directory holding the static library.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = artifact_dir().join("libgradus_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("gradus "));
}
