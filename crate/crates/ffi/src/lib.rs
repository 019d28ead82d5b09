//! C interface to `rcft-core`.
//!
//! Every function returns an [`RcftStatus`]. On anything other than
//! `RCFT_STATUS_OK` or `RCFT_STATUS_FAIL`, [`rcft_last_error`] holds a message
//! for the calling thread. Handles are opaque and released with [`rcft_free`];
//! strings returned by the library are released with [`rcft_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rcft_core::catalog::{affine_data, builtin_group, lattice_data, quantum_double_data, Algebra};
use rcft_core::congruence::{sl2_group_order, theorem2_test, two_ness};
use rcft_core::format::{parse, serialize};
use rcft_core::galois::extract_galois;
use rcft_core::moddata::{validate, verlinde};
use rcft_core::{ModularData, Rational};

/// Opaque modular data handle.
pub struct RcftModularData(ModularData);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcftStatus {
    Ok = 0,
    /// The computation finished and the property does not hold.
    Fail = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    Precondition = 5,
    Arithmetic = 6,
    OutOfRange = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl std::fmt::Display) {
    let c = CString::new(msg.to_string().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Res<T> = Result<T, RcftStatus>;

fn fail<E: std::fmt::Display>(status: RcftStatus) -> impl FnOnce(E) -> RcftStatus {
    move |e| {
        set_error(e);
        status
    }
}

fn guard(f: impl FnOnce() -> Res<RcftStatus>) -> RcftStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            RcftStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        set_error("null string argument");
        return Err(RcftStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(fail(RcftStatus::InvalidUtf8))
}

unsafe fn handle<'a>(p: *const RcftModularData) -> Res<&'a ModularData> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| {
        set_error("null modular data handle");
        RcftStatus::NullPointer
    })
}

unsafe fn out<'a, T>(p: *mut T) -> Res<&'a mut T> {
    p.as_mut().ok_or_else(|| {
        set_error("null output pointer");
        RcftStatus::NullPointer
    })
}

unsafe fn emit(md: ModularData, dst: *mut *mut RcftModularData) -> Res<RcftStatus> {
    *out(dst)? = Box::into_raw(Box::new(RcftModularData(md)));
    Ok(RcftStatus::Ok)
}

fn verdict(pass: bool) -> RcftStatus {
    if pass {
        RcftStatus::Ok
    } else {
        RcftStatus::Fail
    }
}

/// Message for the last error on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn rcft_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse a document in the text container format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `dst` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcft_parse(text: *const c_char, dst: *mut *mut RcftModularData) -> RcftStatus {
    guard(|| {
        let doc = parse(str_arg(text)?).map_err(fail(RcftStatus::Parse))?;
        emit(doc.data, dst)
    })
}

/// Lattice data for √n Z, n even.
///
/// # Safety
/// `dst` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcft_gen_lattice(n: u32, dst: *mut *mut RcftModularData) -> RcftStatus {
    guard(|| emit(lattice_data(n).map_err(fail(RcftStatus::Precondition))?, dst))
}

/// Affine data; `algebra` is "a1" or "a2".
///
/// # Safety
/// `algebra` must be a NUL-terminated string and `dst` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcft_gen_affine(
    algebra: *const c_char,
    level: u32,
    dst: *mut *mut RcftModularData,
) -> RcftStatus {
    guard(|| {
        let alg: Algebra = str_arg(algebra)?.parse().map_err(fail(RcftStatus::Precondition))?;
        emit(affine_data(alg, level).map_err(fail(RcftStatus::Precondition))?, dst)
    })
}

/// Quantum double of a built-in group: "z<n>", "s3", "d4" or "q8".
///
/// # Safety
/// `group` must be a NUL-terminated string and `dst` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcft_gen_double(group: *const c_char, dst: *mut *mut RcftModularData) -> RcftStatus {
    guard(|| {
        let g = builtin_group(str_arg(group)?).map_err(fail(RcftStatus::Precondition))?;
        emit(quantum_double_data(&g).map_err(fail(RcftStatus::Arithmetic))?, dst)
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `md` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rcft_free(md: *mut RcftModularData) {
    if !md.is_null() {
        drop(Box::from_raw(md));
    }
}

/// Number of primaries.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcft_size(md: *const RcftModularData, dst: *mut usize) -> RcftStatus {
    guard(|| {
        *out(dst)? = handle(md)?.size();
        Ok(RcftStatus::Ok)
    })
}

/// Order N of T.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcft_t_order(md: *const RcftModularData, dst: *mut u64) -> RcftStatus {
    guard(|| {
        *out(dst)? = handle(md)?.t_order();
        Ok(RcftStatus::Ok)
    })
}

/// `RCFT_STATUS_OK` when every modular-data axiom holds, `RCFT_STATUS_FAIL` otherwise.
///
/// # Safety
/// `md` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rcft_validate(md: *const RcftModularData) -> RcftStatus {
    guard(|| {
        let r = validate(handle(md)?).map_err(fail(RcftStatus::Arithmetic))?;
        if let Some(a) = r.first_failure() {
            set_error(format!("{} fails", a.name));
        }
        Ok(verdict(r.passed()))
    })
}

/// The congruence test on (S, T).
///
/// # Safety
/// `md` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rcft_theorem2(md: *const RcftModularData) -> RcftStatus {
    guard(|| {
        let r = theorem2_test(handle(md)?).map_err(fail(RcftStatus::Precondition))?;
        if !r.passed() {
            set_error(&r);
        }
        Ok(verdict(r.passed()))
    })
}

/// The container-format text. Free the result with [`rcft_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcft_serialize(md: *const RcftModularData, dst: *mut *mut c_char) -> RcftStatus {
    guard(|| {
        let text = serialize(handle(md)?, None);
        *out(dst)? = CString::new(text).map_err(fail(RcftStatus::Arithmetic))?.into_raw();
        Ok(RcftStatus::Ok)
    })
}

/// Release a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rcft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The Verlinde coefficient N_ab^c.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcft_fusion(
    md: *const RcftModularData,
    a: usize,
    b: usize,
    c: usize,
    dst: *mut u64,
) -> RcftStatus {
    guard(|| {
        let md = handle(md)?;
        let n = md.size();
        if a >= n || b >= n || c >= n {
            set_error(format!("index out of range for {n} primaries"));
            return Err(RcftStatus::OutOfRange);
        }
        let f = verlinde(md).map_err(fail(RcftStatus::Fail))?;
        *out(dst)? = f.get(a, b, c);
        Ok(RcftStatus::Ok)
    })
}

/// Galois permutation and signs for ℓ. `perm` and `signs` must each hold `len` ≥ size entries.
///
/// # Safety
/// `perm` and `signs` must point to `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn rcft_galois(
    md: *const RcftModularData,
    ell: i64,
    perm: *mut usize,
    signs: *mut i8,
    len: usize,
) -> RcftStatus {
    guard(|| {
        let md = handle(md)?;
        if perm.is_null() || signs.is_null() {
            set_error("null output pointer");
            return Err(RcftStatus::NullPointer);
        }
        if len < md.size() {
            set_error(format!("buffers hold {len}, need {}", md.size()));
            return Err(RcftStatus::OutOfRange);
        }
        let g = extract_galois(md, ell).map_err(fail(RcftStatus::Precondition))?;
        let p = std::slice::from_raw_parts_mut(perm, md.size());
        let s = std::slice::from_raw_parts_mut(signs, md.size());
        p.copy_from_slice(&g.perm);
        s.copy_from_slice(&g.signs);
        Ok(RcftStatus::Ok)
    })
}

/// |SL₂(Z/n)| by enumeration, stopping past `cap` elements.
///
/// # Safety
/// `dst` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcft_sl2_group_order(n: u64, cap: u64, dst: *mut u64) -> RcftStatus {
    guard(|| {
        *out(dst)? = sl2_group_order(n, cap).map_err(fail(RcftStatus::Precondition))?;
        Ok(RcftStatus::Ok)
    })
}

/// The 2-adic valuation of p/q.
///
/// # Safety
/// `dst` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcft_two_ness(p: i64, q: i64, dst: *mut i64) -> RcftStatus {
    guard(|| {
        if q == 0 {
            set_error("zero denominator");
            return Err(RcftStatus::Arithmetic);
        }
        let r = Rational::new(p.into(), q.into());
        *out(dst)? = two_ness(&r).map_err(fail(RcftStatus::Arithmetic))?;
        Ok(RcftStatus::Ok)
    })
}
