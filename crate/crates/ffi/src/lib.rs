//! C ABI over the knowledge map engine.
//!
//! Every function returns an [`OakStatus`]. Results come back through out
//! pointers; strings returned this way are owned by the caller and must be
//! released with [`oak_string_free`]. After a failure,
//! [`oak_last_error`] describes it until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use oak_core::assessment::{foca_score, repository_report, FocaGoals, FocaInput};
use oak_core::browser::search;
use oak_core::kmap::{builtin_ontology, Ontology};
use oak_core::rdf::{parse_turtle, snapshot, TripleStore};
use oak_core::repository::{import_kr, new_repository, next_suffix};
use oak_core::sparql::{evaluate, parse_query_with, to_json};
use oak_core::wrapper::{to_turtle, wrap_json};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OakStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Rejected = 4,
    NotFound = 5,
    Io = 6,
    Panic = 99,
}

/// A repository: the built-in ontology and a triple store.
pub struct OakRepository {
    store: TripleStore,
    ontology: Ontology,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(OakStatus, String);

type FfiResult = Result<(), Failure>;

fn fail(status: OakStatus, msg: impl ToString) -> Failure {
    Failure(status, msg.to_string())
}

fn guard(f: impl FnOnce() -> FfiResult) -> OakStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OakStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OakStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(OakStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(OakStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn repo<'a>(p: *mut OakRepository) -> Result<&'a mut OakRepository, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(OakStatus::NullArgument, "repository is null"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult {
    if out.is_null() {
        return Err(fail(OakStatus::NullArgument, "output pointer is null"));
    }
    let c = CString::new(s.replace('\0', " ")).expect("nul bytes removed");
    *out = c.into_raw();
    Ok(())
}

unsafe fn put<T>(out: *mut T, v: T) -> FfiResult {
    if out.is_null() {
        return Err(fail(OakStatus::NullArgument, "output pointer is null"));
    }
    *out = v;
    Ok(())
}

unsafe fn put_repo(out: *mut *mut OakRepository, r: OakRepository) -> FfiResult {
    put(out, Box::into_raw(Box::new(r)))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call.
#[no_mangle]
pub extern "C" fn oak_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates an empty repository holding the built-in ontology.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oak_repository_new(out: *mut *mut OakRepository) -> OakStatus {
    guard(|| {
        let ontology = builtin_ontology();
        let store = new_repository(&ontology);
        put_repo(out, OakRepository { store, ontology })
    })
}

/// Loads a repository snapshot.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oak_repository_open(path: *const c_char, out: *mut *mut OakRepository) -> OakStatus {
    guard(|| {
        let path = text(path, "path")?;
        let store = snapshot::load(Path::new(path)).map_err(|e| match e {
            snapshot::SnapshotError::Io { .. } => fail(OakStatus::Io, e),
            snapshot::SnapshotError::Corrupt { .. } => fail(OakStatus::ParseError, e),
        })?;
        put_repo(
            out,
            OakRepository {
                store,
                ontology: builtin_ontology(),
            },
        )
    })
}

/// Writes the repository to `path` as Turtle.
///
/// # Safety
/// `repo` must come from this library; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oak_repository_save(repo_: *mut OakRepository, path: *const c_char) -> OakStatus {
    guard(|| {
        let r = repo(repo_)?;
        let path = text(path, "path")?;
        snapshot::save(&r.store, Path::new(path)).map_err(|e| fail(OakStatus::Io, e))
    })
}

/// Releases a repository. NULL is ignored.
///
/// # Safety
/// `repo` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn oak_repository_free(repo_: *mut OakRepository) {
    if !repo_.is_null() {
        drop(Box::from_raw(repo_));
    }
}

/// Number of triples in the repository.
///
/// # Safety
/// `repo` must come from this library and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn oak_repository_len(repo_: *mut OakRepository, out: *mut usize) -> OakStatus {
    guard(|| put(out, repo(repo_)?.store.len()))
}

/// Wraps a JSON descriptor, imports it and returns its Turtle.
///
/// # Safety
/// Pointers must be valid; `descriptor_json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oak_wrap_import(
    repo_: *mut OakRepository,
    descriptor_json: *const c_char,
    out_turtle: *mut *mut c_char,
) -> OakStatus {
    guard(|| {
        let r = repo(repo_)?;
        let json = text(descriptor_json, "descriptor")?;
        let kr = wrap_json(json, &r.ontology, next_suffix(&r.store)).map_err(|e| fail(OakStatus::Rejected, e))?;
        import_kr(&mut r.store, &kr).map_err(|e| fail(OakStatus::Rejected, e))?;
        put_string(out_turtle, to_turtle(&kr))
    })
}

/// Adds Turtle triples; `out_added` receives the number of new triples.
///
/// # Safety
/// Pointers must be valid; `turtle` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oak_import_turtle(
    repo_: *mut OakRepository,
    turtle: *const c_char,
    out_added: *mut usize,
) -> OakStatus {
    guard(|| {
        let r = repo(repo_)?;
        let doc = parse_turtle(text(turtle, "turtle")?).map_err(|e| fail(OakStatus::ParseError, e))?;
        r.store.prefixes_mut().extend(&doc.prefixes);
        put(out_added, r.store.extend(doc.triples))
    })
}

/// Runs a SPARQL query; the result is SPARQL-results JSON.
///
/// # Safety
/// Pointers must be valid; `query` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oak_query(
    repo_: *mut OakRepository,
    query: *const c_char,
    out_json: *mut *mut c_char,
) -> OakStatus {
    guard(|| {
        let r = repo(repo_)?;
        let q =
            parse_query_with(text(query, "query")?, r.store.prefixes()).map_err(|e| fail(OakStatus::ParseError, e))?;
        put_string(out_json, to_json(&evaluate(&r.store, &q)).to_string())
    })
}

/// Keyword search; the result is JSON with the generated query and cards.
///
/// # Safety
/// Pointers must be valid; `q` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oak_search(
    repo_: *mut OakRepository,
    q: *const c_char,
    out_json: *mut *mut c_char,
) -> OakStatus {
    guard(|| {
        let r = repo(repo_)?;
        let out = search(&r.store, &r.ontology, text(q, "q")?).map_err(|e| fail(OakStatus::NotFound, e))?;
        put_string(out_json, serde_json::to_string(&out).expect("outcomes serialize"))
    })
}

/// Repository coverage report as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn oak_report(repo_: *mut OakRepository, out_json: *mut *mut c_char) -> OakStatus {
    guard(|| {
        let r = repo(repo_)?;
        put_string(
            out_json,
            serde_json::to_string(&repository_report(&r.store)).expect("reports serialize"),
        )
    })
}

/// FOCA total quality μ for grades given as `{"G1": [...], ...}`, with all
/// role flags set, an experienced evaluator and Nl = 0.
///
/// # Safety
/// Pointers must be valid; `grades_json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oak_foca(grades_json: *const c_char, out_mu: *mut f64) -> OakStatus {
    guard(|| {
        let goals: FocaGoals =
            serde_json::from_str(text(grades_json, "grades")?).map_err(|e| fail(OakStatus::ParseError, e))?;
        let s = foca_score(&FocaInput::new(goals)).map_err(|e| fail(OakStatus::Rejected, e))?;
        put(out_mu, s.mu)
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn oak_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
