//! C ABI for `affine-index`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`AipStatus`]; on failure a message is available from
//! [`aip_last_error`] on the same thread. Strings returned through `char **`
//! out-parameters are released with [`aip_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use affine_index::biquandle::{self, AffineParams, FiniteFlatBiquandle};
use affine_index::coloring::propagate_coloring;
use affine_index::diagram_ops;
use affine_index::gauss_code::{parse_flat, parse_signed};
use affine_index::invariant;
use affine_index::{Error, LaurentPolynomial, SignedGaussCode};
use num_traits::ToPrimitive;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AipStatus {
    Ok = 0,
    /// Null pointer, unknown crossing, wrong number of components and the like.
    InvalidArgument = 1,
    /// Text that is not a valid code or biquandle description.
    Parse = 2,
    /// The diagram admits no Cheng coloring.
    Uncolorable = 3,
    /// An internal consistency check failed.
    Internal = 4,
    /// A value does not fit the C type of the out-parameter.
    Overflow = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// A signed Gauss code.
pub struct AipCode(SignedGaussCode);

/// An integer Laurent polynomial.
pub struct AipPolynomial(LaurentPolynomial);

/// A finite flat biquandle given by tables.
pub struct AipBiquandle(FiniteFlatBiquandle);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> AipStatus {
    match e {
        Error::Syntax { .. } | Error::Validation(_) | Error::Format(_) => AipStatus::Parse,
        Error::Uncolorable { .. } => AipStatus::Uncolorable,
        Error::Internal(_) => AipStatus::Internal,
        _ => AipStatus::InvalidArgument,
    }
}

struct Fail(AipStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(AipStatus::InvalidArgument, msg.to_string())
}

/// Runs `f`, recording failures and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AipStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            AipStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic in affine-index");
            AipStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(invalid("null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(AipStatus::Parse, "string is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| invalid("null handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("null out-parameter"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message describing the last failure on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn aip_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aip_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a signed Gauss code such as `"O1+ O2+ U1+ U2+"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_parse(
    text_ptr: *const c_char,
    out: *mut *mut AipCode,
) -> AipStatus {
    guard(|| {
        let code = parse_signed(text(text_ptr)?)?;
        put(out, boxed(AipCode(code)))
    })
}

/// Releases a code. Null is ignored.
///
/// # Safety
/// `code` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aip_code_free(code: *mut AipCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Serializes a code.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_to_string(
    code: *const AipCode,
    out: *mut *mut c_char,
) -> AipStatus {
    guard(|| put(out, c_string(get(code)?.0.to_string())))
}

/// Canonical form as a new handle.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_canonicalize(
    code: *const AipCode,
    out: *mut *mut AipCode,
) -> AipStatus {
    guard(|| put(out, boxed(AipCode(get(code)?.0.canonicalize()))))
}

/// Mirror image (every crossing switched) as a new handle.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_mirror(
    code: *const AipCode,
    out: *mut *mut AipCode,
) -> AipStatus {
    guard(|| put(out, boxed(AipCode(diagram_ops::mirror(&get(code)?.0)))))
}

/// Orientation reversal as a new handle.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_reverse(
    code: *const AipCode,
    out: *mut *mut AipCode,
) -> AipStatus {
    guard(|| put(out, boxed(AipCode(diagram_ops::reverse(&get(code)?.0)))))
}

/// Sum of crossing signs.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_writhe(code: *const AipCode, out: *mut i64) -> AipStatus {
    guard(|| put(out, diagram_ops::writhe(&get(code)?.0)))
}

/// Number of components.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_code_num_components(
    code: *const AipCode,
    out: *mut usize,
) -> AipStatus {
    guard(|| put(out, get(code)?.0.num_components()))
}

/// Affine Index Polynomial of a one-component code.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_polynomial(
    code: *const AipCode,
    out: *mut *mut AipPolynomial,
) -> AipStatus {
    guard(|| {
        let p = invariant::affine_index_polynomial(&get(code)?.0)?;
        put(out, boxed(AipPolynomial(p)))
    })
}

/// Polynomial of a link colored from per-component offsets. `offsets` holds
/// `len` values, one per component.
///
/// # Safety
/// `code` must be a live handle, `offsets` readable for `len` values (or
/// null when `len` is 0) and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_link_polynomial(
    code: *const AipCode,
    offsets: *const i64,
    len: usize,
    out: *mut *mut AipPolynomial,
) -> AipStatus {
    guard(|| {
        let code = &get(code)?.0;
        let offsets = match (offsets.is_null(), len) {
            (_, 0) => &[][..],
            (true, _) => return Err(invalid("null offsets")),
            (false, n) => std::slice::from_raw_parts(offsets, n),
        };
        let coloring = propagate_coloring(code, offsets)?;
        let p = invariant::link_pair_polynomial(code, &coloring)?;
        put(out, boxed(AipPolynomial(p)))
    })
}

/// Releases a polynomial. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aip_polynomial_free(p: *mut AipPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Text form, e.g. `"t^-1 - 2 + t"`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_polynomial_to_string(
    p: *const AipPolynomial,
    out: *mut *mut c_char,
) -> AipStatus {
    guard(|| put(out, c_string(get(p)?.0.to_string())))
}

/// Number of nonzero terms.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_polynomial_num_terms(
    p: *const AipPolynomial,
    out: *mut usize,
) -> AipStatus {
    guard(|| put(out, get(p)?.0.len()))
}

/// Term `index` in ascending exponent order.
///
/// # Safety
/// `p` must be a live handle and both out-parameters writable.
#[no_mangle]
pub unsafe extern "C" fn aip_polynomial_term(
    p: *const AipPolynomial,
    index: usize,
    exponent: *mut i64,
    coefficient: *mut i64,
) -> AipStatus {
    guard(|| {
        let (e, c) = get(p)?
            .0
            .terms()
            .nth(index)
            .ok_or_else(|| invalid("term index out of range"))?;
        let c = c
            .to_i64()
            .ok_or_else(|| Fail(AipStatus::Overflow, "coefficient exceeds 64 bits".into()))?;
        put(exponent, e)?;
        put(coefficient, c)
    })
}

/// Vassiliev invariant `v_n` of a knot as a reduced fraction.
///
/// # Safety
/// `code` must be a live handle and both out-parameters writable.
#[no_mangle]
pub unsafe extern "C" fn aip_vassiliev(
    code: *const AipCode,
    n: u32,
    numerator: *mut i64,
    denominator: *mut i64,
) -> AipStatus {
    guard(|| {
        if n == 0 {
            return Err(invalid("order must be at least 1"));
        }
        let v = invariant::knot_vassiliev(&get(code)?.0, n)?;
        let overflow = || Fail(AipStatus::Overflow, "value exceeds 64 bits".into());
        let num = v.numer().to_i64().ok_or_else(overflow)?;
        let den = v.denom().to_i64().ok_or_else(overflow)?;
        put(numerator, num)?;
        put(denominator, den)
    })
}

/// `a * b = r a + s b + k`, `a # b = p a + q b + l` over `Z/n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aip_biquandle_affine(
    n: usize,
    r: i64,
    s: i64,
    k: i64,
    p: i64,
    q: i64,
    l: i64,
    out: *mut *mut AipBiquandle,
) -> AipStatus {
    guard(|| {
        if n == 0 {
            return Err(invalid("carrier size must be positive"));
        }
        let params = AffineParams::new(n, [r, s, k, p, q, l]);
        put(out, boxed(AipBiquandle(biquandle::make_affine(&params))))
    })
}

/// Reads the table file format (or a single `N r s k p q l` line).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_biquandle_parse(
    text_ptr: *const c_char,
    out: *mut *mut AipBiquandle,
) -> AipStatus {
    guard(|| {
        let b: FiniteFlatBiquandle = text(text_ptr)?.parse()?;
        put(out, boxed(AipBiquandle(b)))
    })
}

/// Releases a biquandle. Null is ignored.
///
/// # Safety
/// `b` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aip_biquandle_free(b: *mut AipBiquandle) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Whether axioms 1-2 (`preflat`) and all three axioms (`flat`) hold.
///
/// # Safety
/// `b` must be a live handle and both out-parameters writable.
#[no_mangle]
pub unsafe extern "C" fn aip_biquandle_check(
    b: *const AipBiquandle,
    preflat: *mut bool,
    flat: *mut bool,
) -> AipStatus {
    guard(|| {
        let report = biquandle::check_axioms(&get(b)?.0);
        put(preflat, report.is_preflat())?;
        put(flat, report.is_flat_biquandle())
    })
}

/// Number of colorings of a flat code such as `"R1 R2 L1 L2"`.
///
/// # Safety
/// `b` must be a live handle, `flat_code` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn aip_biquandle_count_colorings(
    b: *const AipBiquandle,
    flat_code: *const c_char,
    out: *mut usize,
) -> AipStatus {
    guard(|| {
        let flat = parse_flat(text(flat_code)?)?;
        let cols = biquandle::solve_colorings(&flat, &get(b)?.0, &[])?;
        put(out, cols.len())
    })
}

/// Whether every resolution of a flat knot has nonzero polynomial.
///
/// # Safety
/// `flat_code` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aip_flat_certificate(
    flat_code: *const c_char,
    out: *mut bool,
) -> AipStatus {
    guard(|| {
        let flat = parse_flat(text(flat_code)?)?;
        put(
            out,
            invariant::flat_nontriviality_certificate(&flat)?.certified,
        )
    })
}
