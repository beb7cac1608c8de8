//! C ABI for cbrauer.
//!
//! Objects cross the boundary as opaque handles created by `*_new` and
//! released by `*_free`. Every fallible call returns a [`CbrStatus`] and
//! writes results through out-pointers; the message of the last failure on
//! the calling thread is available from [`cbr_last_error`]. Strings returned
//! by the library are released with [`cbr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cbrauer::brauer::cellular::BrauerCellular;
use cbrauer::brauer::{generic_dimension, BrauerAlgebra};
use cbrauer::rational::{fmt_q, Q};
use cbrauer::repanalysis::decomposition_matrix;
use cbrauer::tensoro::{check_micro_scale, verify_all, TensorSetting};
use cbrauer::weights::{compute_u_params, omega_zero, saturation_check, HighestWeightConfig, RootDatum, RootType};
use cbrauer::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    VerificationFailed = 4,
    Unsupported = 5,
    TruncationOverflow = 6,
    OmegaExhausted = 7,
    Overflow = 8,
    Panic = 9,
}

/// Root system type of a Lie-side datum.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbrRootType {
    B = 0,
    C = 1,
    D = 2,
}

/// A cyclotomic Brauer algebra B_{a,r}(u) with admissible ω.
pub struct CbrAlgebra {
    inner: BrauerAlgebra,
}

/// A Lie-side datum (Φ, n, p, i, c).
pub struct CbrDatum {
    inner: HighestWeightConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CbrStatus {
    match e {
        Error::Input(_) => CbrStatus::InvalidInput,
        Error::Budget { .. } => CbrStatus::BudgetExceeded,
        Error::Verification(_) => CbrStatus::VerificationFailed,
        Error::Unsupported(_) => CbrStatus::Unsupported,
        Error::Truncation { .. } => CbrStatus::TruncationOverflow,
        Error::OmegaExhausted { .. } => CbrStatus::OmegaExhausted,
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), (CbrStatus, String)>) -> CbrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CbrStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CbrStatus::Panic
        }
    }
}

fn lift<T>(r: cbrauer::Result<T>) -> Result<T, (CbrStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Refuses algebras whose dimension a^r (2r−1)!! exceeds `budget`.
fn check_budget(a: usize, r: usize, budget: usize) -> Result<(), (CbrStatus, String)> {
    let needed = generic_dimension(a, r);
    if needed > budget {
        return lift(Err(Error::Budget { needed, budget }));
    }
    Ok(())
}

fn null(name: &str) -> (CbrStatus, String) {
    (CbrStatus::NullPointer, format!("{name} is null"))
}

unsafe fn rationals(num: *const i64, den: *const i64, len: usize) -> Result<Vec<Q>, (CbrStatus, String)> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if num.is_null() || den.is_null() {
        return Err(null("rational array"));
    }
    let num = std::slice::from_raw_parts(num, len);
    let den = std::slice::from_raw_parts(den, len);
    num.iter()
        .zip(den)
        .map(|(&n, &d)| {
            if d == 0 {
                Err((CbrStatus::InvalidInput, "zero denominator".to_string()))
            } else {
                Ok(Q::new(n.into(), d.into()))
            }
        })
        .collect()
}

fn write_rational(x: &Q, num: *mut i64, den: *mut i64) -> Result<(), (CbrStatus, String)> {
    let (Ok(n), Ok(d)) = (i64::try_from(x.numer()), i64::try_from(x.denom())) else {
        return Err((CbrStatus::Overflow, format!("{} does not fit in 64 bits", fmt_q(x))));
    };
    unsafe {
        *num = n;
        *den = d;
    }
    Ok(())
}

fn write_string(s: String, out: *mut *mut c_char) -> Result<(), (CbrStatus, String)> {
    let c = CString::new(s).map_err(|e| (CbrStatus::Panic, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cbr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cbr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates B_{a,r}(u) from `a` parameters u_j = u_num[j] / u_den[j]. Fails
/// with [`CbrStatus::BudgetExceeded`] when the dimension exceeds `budget`.
///
/// # Safety
/// `u_num` and `u_den` must point to `a` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_algebra_new(
    a: usize,
    r: usize,
    u_num: *const i64,
    u_den: *const i64,
    budget: usize,
    out: *mut *mut CbrAlgebra,
) -> CbrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let u = rationals(u_num, u_den, a)?;
        check_budget(a, r, budget)?;
        let inner = lift(BrauerAlgebra::new(a, r, u))?;
        *out = Box::into_raw(Box::new(CbrAlgebra { inner }));
        Ok(())
    })
}

/// Releases an algebra handle.
///
/// # Safety
/// `h` must be NULL or a handle from [`cbr_algebra_new`], not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cbr_algebra_free(h: *mut CbrAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension of the algebra (the size of its normal-form basis).
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_algebra_dimension(h: *const CbrAlgebra, out: *mut usize) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = h.inner.dim();
        Ok(())
    })
}

/// ω_k of the admissible sequence, as a reduced fraction.
///
/// # Safety
/// `h` must be a live handle; `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_algebra_omega(h: *const CbrAlgebra, k: usize, num: *mut i64, den: *mut i64) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if num.is_null() || den.is_null() {
            return Err(null("out"));
        }
        let omega = h.inner.omega();
        let w = omega
            .get(k)
            .ok_or_else(|| lift::<()>(Err(Error::OmegaExhausted { requested: k, available: omega.len() - 1 })).unwrap_err())?;
        write_rational(w, num, den)
    })
}

/// The decomposition matrix as a JSON document (release with [`cbr_string_free`]).
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_algebra_decomposition_json(h: *const CbrAlgebra, out: *mut *mut c_char) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cells = lift(BrauerCellular::new(&h.inner))?;
        let d = lift(decomposition_matrix(&cells))?;
        let label = |(f, l): &(usize, cbrauer::combinat::Multipartition)| serde_json::json!({ "f": f, "lambda": l.to_vecs() });
        let doc = serde_json::json!({
            "schema": 1,
            "rows": d.rows.iter().map(label).collect::<Vec<_>>(),
            "cols": d.cols.iter().map(label).collect::<Vec<_>>(),
            "matrix": d.entries,
            "cell_dims": d.cell_dims,
            "unitriangular": d.is_unitriangular(),
            "identity": d.is_identity(),
        });
        write_string(doc.to_string(), out)
    })
}

/// Creates a Lie-side datum; `p` holds the k cut points and `c` the k shifts.
///
/// # Safety
/// `p`, `c_num`, `c_den` must point to `k` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_new(
    root_type: CbrRootType,
    n: usize,
    p: *const usize,
    k: usize,
    i: usize,
    c_num: *const i64,
    c_den: *const i64,
    out: *mut *mut CbrDatum,
) -> CbrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if p.is_null() && k > 0 {
            return Err(null("p"));
        }
        let cuts = if k == 0 { Vec::new() } else { std::slice::from_raw_parts(p, k).to_vec() };
        let c = rationals(c_num, c_den, k)?;
        let phi = match root_type {
            CbrRootType::B => RootType::B,
            CbrRootType::C => RootType::C,
            CbrRootType::D => RootType::D,
        };
        let datum = lift(RootDatum::new_for_dictionary(phi, n, cuts, i))?;
        let inner = lift(HighestWeightConfig::new(datum, c))?;
        *out = Box::into_raw(Box::new(CbrDatum { inner }));
        Ok(())
    })
}

/// Releases a datum handle.
///
/// # Safety
/// `h` must be NULL or a handle from [`cbr_datum_new`], not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_free(h: *mut CbrDatum) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The level a of the datum (the number of parameters u).
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_level(h: *const CbrDatum, out: *mut usize) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = h.inner.datum.level();
        Ok(())
    })
}

/// The parameter u_j (0-based j < level) attached to the datum.
///
/// # Safety
/// `h` must be a live handle; `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_u(h: *const CbrDatum, j: usize, num: *mut i64, den: *mut i64) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if num.is_null() || den.is_null() {
            return Err(null("out"));
        }
        let u = lift(compute_u_params(&h.inner))?;
        let x = u.get(j).ok_or((CbrStatus::InvalidInput, format!("index {j} out of range")))?;
        write_rational(x, num, den)
    })
}

/// ω_0 of the datum's parameters (equal to ε N).
///
/// # Safety
/// `h` must be a live handle; `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_omega0(h: *const CbrDatum, num: *mut i64, den: *mut i64) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if num.is_null() || den.is_null() {
            return Err(null("out"));
        }
        write_rational(&lift(omega_zero(&h.inner))?, num, den)
    })
}

/// Builds the algebra B_{a,r}(u) whose parameters come from the datum,
/// subject to the same dimension budget as [`cbr_algebra_new`].
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_algebra(h: *const CbrDatum, r: usize, budget: usize, out: *mut *mut CbrAlgebra) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let a = h.inner.datum.level();
        check_budget(a, r, budget)?;
        let u = lift(compute_u_params(&h.inner))?;
        let inner = lift(BrauerAlgebra::new(a, r, u))?;
        *out = Box::into_raw(Box::new(CbrAlgebra { inner }));
        Ok(())
    })
}

/// Saturation check for λ_{I,c} + 𝒦_j, j ≤ r. Writes 1 when saturated.
///
/// # Safety
/// `h` must be a live handle and `saturated` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_saturation(h: *const CbrDatum, r: usize, budget: usize, saturated: *mut i32) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if saturated.is_null() {
            return Err(null("out"));
        }
        let report = lift(saturation_check(&h.inner, r, budget))?;
        *saturated = i32::from(report.passed());
        Ok(())
    })
}

/// Micro-scale verification of the explicit singular vectors for every
/// label. Writes 1 when every check passes.
///
/// # Safety
/// `h` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn cbr_datum_verify_singular(h: *const CbrDatum, r: usize, passed: *mut i32) -> CbrStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if passed.is_null() {
            return Err(null("out"));
        }
        lift(check_micro_scale(&h.inner, r, false))?;
        let setting = lift(TensorSetting::new(h.inner.clone(), r))?;
        let reports = lift(verify_all(&setting))?;
        *passed = i32::from(reports.iter().all(|x| x.passed()));
        Ok(())
    })
}

/// Version string of the library (static; do not free).
#[no_mangle]
pub extern "C" fn cbr_version() -> *const c_char {
    static VERSION: &CStr = c"0.1.0";
    VERSION.as_ptr()
}
