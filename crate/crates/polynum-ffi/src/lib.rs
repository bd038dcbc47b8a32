//! C ABI over the polynum core: opaque polytope handles, integer status
//! codes, and a thread-local error message. All exact i128 arithmetic
//! stays internal; values cross the boundary as i64 with explicit
//! overflow reporting.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polynum::budget::Budget;
use polynum::decompose::{
    decompose_t1_shelling, decompose_t2, decompose_t31, decompose_t32, decompose_t4,
    DecompositionForm, TheoremTag,
};
use polynum::triangulate::build_triangulation;
use polynum::{
    Error, GenericFunctional, NumberContext, PointedTriangulation, Polytope, PolytopeExpr,
};

/// Result of every fallible call. Non-zero means the out-parameters are
/// untouched; polynum_last_error() carries the detail.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolynumStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    RangeError = 3,
    Overflow = 4,
    BudgetExceeded = 5,
    InternalError = 6,
}

/// Opaque handle: a polytope together with its pointed triangulation
/// under the default (index) functional.
pub struct PolynumPolytope {
    p: Polytope,
    f: GenericFunctional,
    t: PointedTriangulation,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.to_string());
}

fn status_of(e: &Error) -> PolynumStatus {
    match e {
        Error::Parse(_) => PolynumStatus::ParseError,
        Error::OutOfRange(_) | Error::OracleInput(_) | Error::DegenerateChain(_) => {
            PolynumStatus::RangeError
        }
        Error::Budget(_) => PolynumStatus::BudgetExceeded,
        Error::SearchExhausted(_) | Error::Inconsistent(_) => PolynumStatus::InternalError,
    }
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> &str {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s
    } else {
        "panic"
    }
}

/// Runs an entry-point body, converting panics (including overflow
/// checks) into InternalError instead of unwinding across the ABI.
fn guarded(body: impl FnOnce() -> PolynumStatus) -> PolynumStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            set_error(panic_text(payload.as_ref()));
            PolynumStatus::InternalError
        }
    }
}

fn fail(status: PolynumStatus, msg: &str) -> PolynumStatus {
    set_error(msg);
    status
}

fn fail_with(e: &Error) -> PolynumStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Parses a polytope expression (e.g. "cube:3", "pyr(cross:2)",
/// "prod(simplex:1,simplex:2)") and builds the polytope. On success
/// stores a heap handle in *out; free it with polynum_polytope_free().
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polynum_polytope_new(
    expr: *const c_char,
    out: *mut *mut PolynumPolytope,
) -> PolynumStatus {
    if expr.is_null() || out.is_null() {
        return fail(PolynumStatus::NullArgument, "expr and out must be non-null");
    }
    let text = match CStr::from_ptr(expr).to_str() {
        Ok(t) => t,
        Err(_) => return fail(PolynumStatus::ParseError, "expr is not valid UTF-8"),
    };
    guarded(|| {
        let built = text
            .parse::<PolytopeExpr>()
            .and_then(|parsed| parsed.build())
            .and_then(|p| {
                let f = GenericFunctional::index(p.ambient_dim);
                let t = build_triangulation(&p, &f)?;
                Ok(Box::new(PolynumPolytope { p, f, t }))
            });
        match built {
            Ok(handle) => {
                *out = Box::into_raw(handle);
                PolynumStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Releases a handle. Passing NULL is a no-op.
///
/// # Safety
/// `p` must be NULL or a pointer from polynum_polytope_new() that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn polynum_polytope_free(p: *mut PolynumPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Dimension of the polytope, or -1 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polynum_polytope_dim(p: *const PolynumPolytope) -> i32 {
    match p.as_ref() {
        Some(h) => h.p.dim,
        None => -1,
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polynum_polytope_vertex_count(p: *const PolynumPolytope) -> u64 {
    match p.as_ref() {
        Some(h) => h.p.coords.len() as u64,
        None => 0,
    }
}

/// Number of nonempty faces including the polytope itself, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polynum_polytope_face_count(p: *const PolynumPolytope) -> u64 {
    match p.as_ref() {
        Some(h) => h.p.nonempty_face_ids().count() as u64,
        None => 0,
    }
}

fn narrowed(value: i128, what: &str) -> Result<i64, PolynumStatus> {
    i64::try_from(value).map_err(|_| fail(PolynumStatus::Overflow, what))
}

/// Writes the polytope number P(n) (or the interior variant) to *out.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polynum_number(
    p: *const PolynumPolytope,
    n: u32,
    interior: bool,
    out: *mut i64,
) -> PolynumStatus {
    let (Some(h), false) = (p.as_ref(), out.is_null()) else {
        return fail(PolynumStatus::NullArgument, "p and out must be non-null");
    };
    guarded(|| {
        let mut ctx = NumberContext::with_apexes(&h.p, h.t.apexes.clone());
        let value = if interior { ctx.interior(n) } else { ctx.number(n) };
        match narrowed(value, "polytope number exceeds i64") {
            Ok(v) => {
                *out = v;
                PolynumStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Fills out[0..=n_max] with P(0..=n_max) (or the interior variant).
/// `out` must have room for n_max + 1 values.
///
/// # Safety
/// `p` must be a live handle and `out` must point to at least
/// n_max + 1 writable i64 slots.
#[no_mangle]
pub unsafe extern "C" fn polynum_sequence(
    p: *const PolynumPolytope,
    n_max: u32,
    interior: bool,
    out: *mut i64,
) -> PolynumStatus {
    let (Some(h), false) = (p.as_ref(), out.is_null()) else {
        return fail(PolynumStatus::NullArgument, "p and out must be non-null");
    };
    guarded(|| {
        let mut ctx = NumberContext::with_apexes(&h.p, h.t.apexes.clone());
        let values = ctx.sequence(n_max, interior);
        for (i, value) in values.iter().enumerate() {
            match narrowed(*value, "polytope number exceeds i64") {
                Ok(v) => *out.add(i) = v,
                Err(status) => return status,
            }
        }
        PolynumStatus::Ok
    })
}

fn decomposition(h: &PolynumPolytope, tag: TheoremTag) -> polynum::Result<DecompositionForm> {
    Ok(match tag {
        TheoremTag::T1 => decompose_t1_shelling(&h.p, &h.t, &h.f, &Budget::default())?,
        TheoremTag::T2 => decompose_t2(&h.p, &h.t),
        TheoremTag::T31 => decompose_t31(&h.p, &h.t),
        TheoremTag::T32 => decompose_t32(&h.p, &h.t),
        TheoremTag::T4 => decompose_t4(&h.t),
    })
}

/// Extracts a decomposition ("1", "2", "3-1", "3-2", or "4") as parallel
/// term arrays: coeffs[i] * alpha^dims[i](n - shifts[i]) summed over i
/// equals P(n) for n >= 1. Always stores the term count in *out_len;
/// writes the arrays only when `cap` is large enough (dims and shifts
/// may each be NULL to skip). Call with cap = 0 to query the length.
///
/// # Safety
/// `p` must be a live handle, `theorem` a NUL-terminated string,
/// `out_len` a valid pointer, and the non-NULL arrays must have `cap`
/// writable slots each.
#[no_mangle]
pub unsafe extern "C" fn polynum_decompose(
    p: *const PolynumPolytope,
    theorem: *const c_char,
    coeffs: *mut i64,
    dims: *mut u32,
    shifts: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> PolynumStatus {
    let (Some(h), false, false) = (p.as_ref(), theorem.is_null(), out_len.is_null()) else {
        return fail(
            PolynumStatus::NullArgument,
            "p, theorem and out_len must be non-null",
        );
    };
    let tag = match CStr::from_ptr(theorem).to_str() {
        Ok(t) => match t.parse::<TheoremTag>() {
            Ok(tag) => tag,
            Err(e) => return fail_with(&e),
        },
        Err(_) => return fail(PolynumStatus::ParseError, "theorem is not valid UTF-8"),
    };
    guarded(|| {
        let form = match decomposition(h, tag) {
            Ok(form) => form,
            Err(e) => return fail_with(&e),
        };
        *out_len = form.terms.len();
        if form.terms.len() > cap {
            return fail(
                PolynumStatus::RangeError,
                "cap is smaller than the term count",
            );
        }
        if coeffs.is_null() {
            return fail(PolynumStatus::NullArgument, "coeffs must be non-null");
        }
        for (i, term) in form.terms.iter().enumerate() {
            match narrowed(term.coeff, "coefficient exceeds i64") {
                Ok(v) => *coeffs.add(i) = v,
                Err(status) => return status,
            }
            if !dims.is_null() {
                *dims.add(i) = term.dim;
            }
            if !shifts.is_null() {
                *shifts.add(i) = term.shift;
            }
        }
        PolynumStatus::Ok
    })
}

/// Static name for a status code.
#[no_mangle]
pub extern "C" fn polynum_status_name(status: PolynumStatus) -> *const c_char {
    let name: &[u8] = match status {
        PolynumStatus::Ok => b"ok\0",
        PolynumStatus::NullArgument => b"null argument\0",
        PolynumStatus::ParseError => b"parse error\0",
        PolynumStatus::RangeError => b"range error\0",
        PolynumStatus::Overflow => b"overflow\0",
        PolynumStatus::BudgetExceeded => b"budget exceeded\0",
        PolynumStatus::InternalError => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}

/// Copies the calling thread's last error message into `buf` (truncated
/// to cap - 1 bytes, always NUL-terminated when cap > 0) and returns the
/// full message length in bytes. Call with cap = 0 to query the length.
///
/// # Safety
/// `buf` must be NULL only when cap is 0, otherwise it must have `cap`
/// writable bytes.
#[no_mangle]
pub unsafe extern "C" fn polynum_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if cap > 0 && !buf.is_null() {
            let n = msg.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}
