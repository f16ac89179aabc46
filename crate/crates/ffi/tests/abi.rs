use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use oak_core::fixtures::{CLASSIFIER_010_JSON, FOCA_TABLE_JSON, NITROGEN_MODELS_RQ};
use oak_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    oak_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = oak_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn fresh() -> *mut OakRepository {
    let mut repo = ptr::null_mut();
    assert_eq!(oak_repository_new(&mut repo), OakStatus::Ok);
    assert!(!repo.is_null());
    repo
}

#[test]
fn wrap_query_search_report() {
    unsafe {
        let repo = fresh();
        let mut before = 0usize;
        assert_eq!(oak_repository_len(repo, &mut before), OakStatus::Ok);

        let mut ttl = ptr::null_mut();
        assert_eq!(
            oak_wrap_import(repo, c(CLASSIFIER_010_JSON).as_ptr(), &mut ttl),
            OakStatus::Ok
        );
        assert!(take(ttl).contains("AgriKMaps:Classifier_010"));
        let mut after = 0usize;
        oak_repository_len(repo, &mut after);
        assert!(after > before);

        let mut json = ptr::null_mut();
        assert_eq!(oak_query(repo, c(NITROGEN_MODELS_RQ).as_ptr(), &mut json), OakStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        let rows = v["results"]["bindings"].as_array().unwrap();
        assert_eq!(rows.len(), 1);

        assert_eq!(
            oak_search(repo, c("predict based on Nitrogen").as_ptr(), &mut json),
            OakStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["template"], "QF3");
        assert_eq!(v["cards"][0]["id"], "Classifier_010");

        assert_eq!(oak_report(repo, &mut json), OakStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["items"], 1);

        oak_repository_free(repo);
    }
}

#[test]
fn failures_set_codes_and_messages() {
    unsafe {
        let repo = fresh();
        let mut json = ptr::null_mut();
        assert_eq!(
            oak_query(repo, c("SELECT WHERE {").as_ptr(), &mut json),
            OakStatus::ParseError
        );
        assert!(json.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            oak_wrap_import(repo, c(r#"{"task":"classification"}"#).as_ptr(), &mut json),
            OakStatus::Rejected
        );
        assert_eq!(oak_search(repo, c("the of a").as_ptr(), &mut json), OakStatus::NotFound);

        assert_eq!(
            oak_query(ptr::null_mut(), c("ASK {}").as_ptr(), &mut json),
            OakStatus::NullArgument
        );
        assert_eq!(oak_query(repo, ptr::null(), &mut json), OakStatus::NullArgument);
        assert_eq!(oak_repository_len(repo, ptr::null_mut()), OakStatus::NullArgument);

        let bad = [0xffu8, 0xfe, 0];
        let mut n = 0usize;
        assert_eq!(
            oak_import_turtle(repo, bad.as_ptr().cast(), &mut n),
            OakStatus::InvalidUtf8
        );

        let mut len = 0usize;
        assert_eq!(oak_repository_len(repo, &mut len), OakStatus::Ok);
        assert!(oak_last_error().is_null());

        oak_repository_free(repo);
        oak_repository_free(ptr::null_mut());
        oak_string_free(ptr::null_mut());
    }
}

#[test]
fn import_save_open() {
    let dir = tempfile::tempdir().unwrap();
    let path = c(dir.path().join("store.ttl").to_str().unwrap());
    unsafe {
        let repo = fresh();
        let mut n = 0usize;
        let ttl = "@prefix ex: <http://example.org/> .\nex:a ex:p ex:b , ex:c .\n";
        assert_eq!(oak_import_turtle(repo, c(ttl).as_ptr(), &mut n), OakStatus::Ok);
        assert_eq!(n, 2);
        let mut len = 0usize;
        oak_repository_len(repo, &mut len);
        assert_eq!(oak_repository_save(repo, path.as_ptr()), OakStatus::Ok);
        oak_repository_free(repo);

        let mut reopened = ptr::null_mut();
        assert_eq!(oak_repository_open(path.as_ptr(), &mut reopened), OakStatus::Ok);
        let mut len2 = 0usize;
        oak_repository_len(reopened, &mut len2);
        assert_eq!(len, len2);
        oak_repository_free(reopened);

        let missing = c(dir.path().join("missing.ttl").to_str().unwrap());
        assert_eq!(oak_repository_open(missing.as_ptr(), &mut reopened), OakStatus::Io);
    }
}

#[test]
fn foca_from_json() {
    let mut mu = 0.0;
    unsafe {
        assert_eq!(oak_foca(c(FOCA_TABLE_JSON).as_ptr(), &mut mu), OakStatus::Ok);
        assert!((mu - 1.0 / (1.0 + (-5.65f64).exp())).abs() < 1e-12);
        assert_eq!(oak_foca(c("{not json").as_ptr(), &mut mu), OakStatus::ParseError);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/oak.h")).unwrap();
    for name in [
        "oak_last_error",
        "oak_repository_new",
        "oak_repository_open",
        "oak_repository_save",
        "oak_repository_free",
        "oak_repository_len",
        "oak_wrap_import",
        "oak_import_turtle",
        "oak_query",
        "oak_search",
        "oak_report",
        "oak_foca",
        "oak_string_free",
        "typedef struct OakRepository OakRepository",
        "OAK_STATUS_PARSE_ERROR = 3",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

fn static_lib() -> Option<PathBuf> {
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in the profile dir.
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).parent()?.to_path_buf();
    ["debug", "release"]
        .iter()
        .map(|p| target.join(p).join("liboak_ffi.a"))
        .find(|p| p.exists())
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping C smoke test");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping C smoke test");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let out = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "exit {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
