//! C interface to `grouplogic`.
//!
//! Groups and formulas are opaque handles owned by the caller and released
//! with `fg_group_free` / `fg_formula_free`. Every fallible call returns an
//! `FgStatus`; on failure `fg_last_error` describes the problem until the
//! next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grouplogic::analysis::{is_nilpotent, is_soluble, soluble_radical};
use grouplogic::group::spec::parse_group_spec;
use grouplogic::logic::{definable_set, eval, parse, EvalConfig, Formula, OracleTable, Valuation};
use grouplogic::{Elem, Error, FiniteGroup, Limits};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    /// A verification found a counterexample.
    CheckFailed = 1,
    /// Bad input: syntax, unknown names, invalid elements.
    Invalid = 2,
    /// A size cap or work budget was exceeded.
    TooLarge = 3,
    NullPointer = 4,
    /// The output buffer is too small; the needed length was written.
    BufferTooSmall = 5,
    /// Internal error.
    Panic = 6,
}

/// A finite group.
pub struct FgGroup(FiniteGroup);

/// A parsed first-order formula.
pub struct FgFormula(Formula);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> FgStatus {
    set_error(e.to_string());
    match e.exit_code() {
        1 => FgStatus::CheckFailed,
        3 => FgStatus::TooLarge,
        _ => FgStatus::Invalid,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), FgStatus>) -> FgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            FgStatus::Panic
        }
    }
}

fn lift<T>(r: grouplogic::Result<T>) -> Result<T, FgStatus> {
    r.map_err(|e| status_of(&e))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, FgStatus> {
    if p.is_null() {
        set_error("null string");
        return Err(FgStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        FgStatus::Invalid
    })
}

unsafe fn group<'a>(g: *const FgGroup) -> Result<&'a FiniteGroup, FgStatus> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| {
        set_error("null group");
        FgStatus::NullPointer
    })
}

unsafe fn formula<'a>(f: *const FgFormula) -> Result<&'a Formula, FgStatus> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| {
        set_error("null formula");
        FgStatus::NullPointer
    })
}

fn out_ptr<T>(p: *mut T) -> Result<(), FgStatus> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(FgStatus::NullPointer);
    }
    Ok(())
}

fn element(g: &FiniteGroup, id: u32) -> Result<Elem, FgStatus> {
    let e = Elem(id);
    if g.contains(e) {
        Ok(e)
    } else {
        set_error(format!("{id} is not an element id of {}", g.label()));
        Err(FgStatus::Invalid)
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a group from a group-spec text such as `"sym 4"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_group_from_spec(
    spec: *const c_char,
    out: *mut *mut FgGroup,
) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        let g = lift(parse_group_spec(text(spec)?, &Limits::default()))?;
        *out = Box::into_raw(Box::new(FgGroup(g)));
        Ok(())
    })
}

/// Builds a group from a row-major `order × order` Cayley table with the
/// identity at id 0.
///
/// # Safety
/// `table` must point to `order * order` readable values.
#[no_mangle]
pub unsafe extern "C" fn fg_group_from_table(
    table: *const u32,
    order: usize,
    out: *mut *mut FgGroup,
) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        if table.is_null() {
            set_error("null table");
            return Err(FgStatus::NullPointer);
        }
        let n = order.checked_mul(order).ok_or_else(|| {
            set_error("table size overflows");
            FgStatus::TooLarge
        })?;
        let flat = std::slice::from_raw_parts(table, n);
        let rows: Vec<Vec<u32>> = flat.chunks(order.max(1)).map(<[u32]>::to_vec).collect();
        let g = lift(FiniteGroup::from_table(&rows))?;
        *out = Box::into_raw(Box::new(FgGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fg_group_free(g: *mut FgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fg_group_order(g: *const FgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_group_mul(
    g: *const FgGroup,
    a: u32,
    b: u32,
    out: *mut u32,
) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        let g = group(g)?;
        let (a, b) = (element(g, a)?, element(g, b)?);
        *out = g.mul(a, b).0;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_group_inv(g: *const FgGroup, a: u32, out: *mut u32) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        let g = group(g)?;
        *out = g.inv(element(g, a)?).0;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `nilpotent`, `soluble` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fg_group_structure(
    g: *const FgGroup,
    nilpotent: *mut bool,
    soluble: *mut bool,
    radical_order: *mut usize,
) -> FgStatus {
    guard(|| {
        out_ptr(nilpotent)?;
        out_ptr(soluble)?;
        out_ptr(radical_order)?;
        let g = group(g)?;
        *nilpotent = is_nilpotent(g);
        *soluble = is_soluble(g);
        *radical_order = soluble_radical(g).len();
        Ok(())
    })
}

/// Parses a formula.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_formula_parse(
    src: *const c_char,
    out: *mut *mut FgFormula,
) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        let f = lift(parse(text(src)?))?;
        *out = Box::into_raw(Box::new(FgFormula(f)));
        Ok(())
    })
}

/// # Safety
/// `f` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fg_formula_free(f: *mut FgFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Truth of a sentence, with `rad` and `fit` bound to the soluble radical
/// and the Fitting subgroup.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_eval(
    g: *const FgGroup,
    f: *const FgFormula,
    out: *mut bool,
) -> FgStatus {
    guard(|| {
        out_ptr(out)?;
        let (g, f) = (group(g)?, formula(f)?);
        *out = lift(eval(
            g,
            f,
            &Valuation::new(),
            &OracleTable::standard(g),
            &EvalConfig::default(),
        ))?;
        Ok(())
    })
}

/// Element ids `h` with `f(h)` true, `var` being the only free variable.
/// Writes the count to `len`; if it exceeds `cap`, nothing else is written
/// and `BufferTooSmall` is returned.
///
/// # Safety
/// Handles must be live, `var` NUL-terminated, `buf` writable for `cap`
/// values (or null with `cap == 0`) and `len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_definable_set(
    g: *const FgGroup,
    f: *const FgFormula,
    var: *const c_char,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> FgStatus {
    guard(|| {
        out_ptr(len)?;
        let (g, f, var) = (group(g)?, formula(f)?, text(var)?);
        let s = lift(definable_set(
            g,
            f,
            &Valuation::new(),
            var,
            &OracleTable::standard(g),
            &EvalConfig::default(),
        ))?;
        *len = s.len();
        if s.len() > cap {
            set_error(format!("{} ids do not fit in a buffer of {cap}", s.len()));
            return Err(FgStatus::BufferTooSmall);
        }
        out_ptr(buf)?;
        for (i, e) in s.iter().enumerate() {
            *buf.add(i) = e.0;
        }
        Ok(())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
