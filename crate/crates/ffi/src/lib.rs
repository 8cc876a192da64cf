//! C interface to meadowlab.
//!
//! Every fallible function returns a [`MeadowStatus`]; on anything other than
//! `MEADOW_STATUS_OK` the message is available from [`meadow_last_error`] on the
//! same thread. Handles and strings returned through out-pointers are owned by
//! the caller and released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use meadowlab::models::{check_model, eval, Assignment, Model};
use meadowlab::residues::{f, is_qr, residue_set};
use meadowlab::schema::parse_schema_spec;
use meadowlab::speccheck::{spec_report, Labeled};
use meadowlab::{parse_equation, parse_term, print_term, Equation, Signature, Term};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeadowStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Model = 4,
    Check = 5,
    InvalidArgument = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A parsed term.
pub struct MeadowTerm {
    term: Term,
}

/// A parsed equation.
pub struct MeadowEquation {
    equation: Equation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MeadowStatus, String);

impl Failure {
    fn new(status: MeadowStatus, msg: impl ToString) -> Failure {
        Failure(status, msg.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MeadowStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MeadowStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            MeadowStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(MeadowStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(MeadowStatus::InvalidUtf8, e))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(MeadowStatus::NullPointer, "null out pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn signature(extended: bool) -> Signature {
    if extended {
        Signature::Extended
    } else {
        Signature::Plain
    }
}

fn model_from(text: &str) -> Result<Model, Failure> {
    text.parse::<Model>().map_err(|e| Failure::new(MeadowStatus::Model, e))
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn meadow_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn meadow_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn meadow_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a term. `extended` admits the imaginary unit `i`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_term_parse(
    text: *const c_char,
    extended: bool,
    out: *mut *mut MeadowTerm,
) -> MeadowStatus {
    guard(|| {
        let term = parse_term(read_str(text)?, signature(extended))
            .map_err(|e| Failure::new(MeadowStatus::Parse, e))?;
        write_out(out, Box::into_raw(Box::new(MeadowTerm { term })))
    })
}

/// # Safety
/// `term` must be NULL or a handle from [`meadow_term_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn meadow_term_free(term: *mut MeadowTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// Canonical text of a term. Free the result with [`meadow_string_free`].
///
/// # Safety
/// `term` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_term_print(term: *const MeadowTerm, out: *mut *mut c_char) -> MeadowStatus {
    guard(|| {
        let t = term
            .as_ref()
            .ok_or_else(|| Failure::new(MeadowStatus::NullPointer, "null term"))?;
        write_out(out, to_c_string(print_term(&t.term)))
    })
}

/// Evaluates a term in `model` ("q0", "qi" or "fp:<p>") under `bindings`, a
/// comma separated list such as "x=1/2,y=3". `bindings` may be NULL.
/// The value is written as text; free it with [`meadow_string_free`].
///
/// # Safety
/// `term` must be a live handle, string arguments NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_eval(
    term: *const MeadowTerm,
    model: *const c_char,
    bindings: *const c_char,
    out: *mut *mut c_char,
) -> MeadowStatus {
    guard(|| {
        let t = term
            .as_ref()
            .ok_or_else(|| Failure::new(MeadowStatus::NullPointer, "null term"))?;
        let model = model_from(read_str(model)?)?;
        let mut env = Assignment::new();
        if !bindings.is_null() {
            for b in read_str(bindings)?.split(',').map(str::trim).filter(|b| !b.is_empty()) {
                let (name, value) = b.split_once('=').ok_or_else(|| {
                    Failure::new(MeadowStatus::InvalidArgument, format!("binding {b:?} is not name=value"))
                })?;
                let v = model
                    .parse_value(value.trim())
                    .map_err(|e| Failure::new(MeadowStatus::Model, e))?;
                env.insert(name.trim().to_string(), v);
            }
        }
        let v = eval(&t.term, &model, &env).map_err(|e| Failure::new(MeadowStatus::Model, e))?;
        write_out(out, to_c_string(v.to_string()))
    })
}

/// Parses an equation `lhs = rhs`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_equation_parse(
    text: *const c_char,
    extended: bool,
    out: *mut *mut MeadowEquation,
) -> MeadowStatus {
    guard(|| {
        let equation = parse_equation(read_str(text)?, signature(extended))
            .map_err(|e| Failure::new(MeadowStatus::Parse, e))?;
        write_out(out, Box::into_raw(Box::new(MeadowEquation { equation })))
    })
}

/// # Safety
/// `eq` must be NULL or a handle from [`meadow_equation_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn meadow_equation_free(eq: *mut MeadowEquation) {
    if !eq.is_null() {
        drop(Box::from_raw(eq));
    }
}

/// Checks an equation in a model: exhaustively in "fp:<p>", by `samples`
/// seeded draws in "q0" and "qi". Writes whether it held.
///
/// # Safety
/// `eq` must be a live handle, `model` NUL-terminated, `satisfied` writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_check_model(
    eq: *const MeadowEquation,
    model: *const c_char,
    samples: usize,
    seed: u64,
    satisfied: *mut bool,
) -> MeadowStatus {
    guard(|| {
        let e = eq
            .as_ref()
            .ok_or_else(|| Failure::new(MeadowStatus::NullPointer, "null equation"))?;
        let model = model_from(read_str(model)?)?;
        let v = check_model(&e.equation, &model, samples, seed)
            .map_err(|e| Failure::new(MeadowStatus::Check, e))?;
        write_out(satisfied, v.is_satisfied())
    })
}

/// Euler's criterion for `n` modulo the prime `p`; `n` must not vanish mod `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_is_qr(n: u64, p: u64, out: *mut bool) -> MeadowStatus {
    guard(|| {
        if p < 2 {
            return Err(Failure::new(MeadowStatus::InvalidArgument, "modulus below 2"));
        }
        let r = is_qr(n, p).map_err(|e| Failure::new(MeadowStatus::InvalidArgument, e))?;
        write_out(out, r)
    })
}

/// Distance from a prime `n` to its largest quadratic residue; 0 otherwise.
#[no_mangle]
pub extern "C" fn meadow_f(n: u64) -> u64 {
    f(n)
}

/// Writes the sorted quadratic residues of `p` into `buf`. `len` receives the
/// count; if it exceeds `cap` nothing is written and `MEADOW_STATUS_BUFFER_TOO_SMALL`
/// is returned, so a call with `cap = 0` queries the size.
///
/// # Safety
/// `buf` must hold `cap` elements (it may be NULL when `cap` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_residue_set(p: u64, buf: *mut u64, cap: usize, len: *mut usize) -> MeadowStatus {
    guard(|| {
        let rs = residue_set(p).map_err(|e| Failure::new(MeadowStatus::InvalidArgument, e))?;
        let r = rs.residues();
        write_out(len, r.len())?;
        if r.len() > cap {
            return Err(Failure::new(
                MeadowStatus::BufferTooSmall,
                format!("{} residues, buffer holds {cap}", r.len()),
            ));
        }
        if !r.is_empty() {
            if buf.is_null() {
                return Err(Failure::new(MeadowStatus::NullPointer, "null buffer"));
            }
            ptr::copy_nonoverlapping(r.as_ptr(), buf, r.len());
        }
        Ok(())
    })
}

/// Initial-algebra check of a set of equations against prime fields up to
/// `bound`, returned as a JSON report. `specs` is a semicolon separated list
/// of schema names ("L:2", "H:0..3", "Md") or raw equations ("x * x = 1").
/// Free the result with [`meadow_string_free`].
///
/// # Safety
/// `specs` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meadow_speccheck_json(
    specs: *const c_char,
    bound: u64,
    out: *mut *mut c_char,
) -> MeadowStatus {
    guard(|| {
        if bound < 2 {
            return Err(Failure::new(MeadowStatus::InvalidArgument, "bound below 2"));
        }
        let mut eqs = Vec::new();
        for s in read_str(specs)?.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if s.contains('=') {
                let e = parse_equation(s, Signature::Plain).map_err(|e| Failure::new(MeadowStatus::Parse, e))?;
                eqs.push(Labeled::new(s, e));
            } else {
                for id in parse_schema_spec(s).map_err(|e| Failure::new(MeadowStatus::Parse, e))? {
                    eqs.push(Labeled::from_schema(id).map_err(|e| Failure::new(MeadowStatus::Parse, e))?);
                }
            }
        }
        if eqs.is_empty() {
            return Err(Failure::new(MeadowStatus::InvalidArgument, "no equations given"));
        }
        let report = spec_report(&eqs, bound).map_err(|e| Failure::new(MeadowStatus::Check, e))?;
        write_out(out, to_c_string(report.to_json()))
    })
}
