//! C ABI for the tropical degeneracy engine.
//!
//! Conventions:
//! - handles are opaque pointers created and freed by this library;
//! - every fallible call returns a [`TropEpStatus`] and writes its result
//!   through an out-pointer, which is left untouched on failure;
//! - strings passed in are NUL-terminated UTF-8; strings passed out are
//!   owned by the caller and must be released with `trop_ep_string_free`;
//! - on failure `trop_ep_last_error` returns a thread-local message valid
//!   until the next failing call on the same thread.
//!
//! Numeric parameters are exact-scalar strings (`"1"`, `"-3/4"`,
//! `"1.41421356237"`, `"sqrt2"`), never floating point: the analysis is
//! exact and cancellation-sensitive.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use tropical_ep::charpoly::{char_poly, ParametricMatrix};
use tropical_ep::models;
use tropical_ep::newton_amoeba::newton_polygon;
use tropical_ep::numerics::{
    cycle_notation, holonomy_trace, splitting_exponent, DecadeRange, LoopMode, LoopSpec,
};
use tropical_ep::poly::BiPoly;
use tropical_ep::rational::{rational_from_str, Scalar};
use tropical_ep::tropical::{ep_order, render_fraction, tropicalize};

/// Status codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TropEpStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// Input could not be parsed or violates a model precondition.
    InvalidInput = 2,
    /// Floating-point stage failed (eigenvalue non-convergence, ambiguous
    /// tracking, degenerate spectrum).
    NumericFailure = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn trop_ep_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Opaque handle around a parametric matrix.
pub struct TropEpMatrix(ParametricMatrix);

/// Opaque handle around an exact bivariate polynomial.
pub struct TropEpPoly(BiPoly);

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, TropEpStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} is NULL"));
        return Err(TropEpStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        TropEpStatus::InvalidInput
    })
}

fn write_out<T>(out: *mut *mut T, value: T) -> TropEpStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return TropEpStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    TropEpStatus::Ok
}

fn write_string(out: *mut *mut c_char, value: String) -> TropEpStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return TropEpStatus::NullArgument;
    }
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            TropEpStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte");
            TropEpStatus::InvalidInput
        }
    }
}

fn scalar_arg(ptr: *const c_char, what: &str) -> Result<Scalar, TropEpStatus> {
    let text = unsafe { read_str(ptr, what)? };
    Scalar::from_str_exact(text).map_err(|e| {
        set_error(&e.to_string());
        TropEpStatus::InvalidInput
    })
}

fn rational_arg(ptr: *const c_char, what: &str) -> Result<num_rational::BigRational, TropEpStatus> {
    let text = unsafe { read_str(ptr, what)? };
    rational_from_str(text).map_err(|e| {
        set_error(&e.to_string());
        TropEpStatus::InvalidInput
    })
}

fn model_err(e: models::ModelError) -> TropEpStatus {
    set_error(&e.to_string());
    TropEpStatus::InvalidInput
}

/// Two-site gain/loss model.
#[no_mangle]
pub extern "C" fn trop_ep_model_two_site(
    kappa: *const c_char,
    gamma: *const c_char,
    out: *mut *mut TropEpMatrix,
) -> TropEpStatus {
    let build = || -> Result<ParametricMatrix, TropEpStatus> {
        let p =
            models::TwoSiteParams::new(scalar_arg(kappa, "kappa")?, scalar_arg(gamma, "gamma")?)
                .map_err(model_err)?;
        models::two_site(&p).map_err(model_err)
    };
    match build() {
        Ok(m) => write_out(out, TropEpMatrix(m)),
        Err(s) => s,
    }
}

/// Three-site gain/loss trimer. `gamma` accepts exact `sqrt2` multiples.
#[no_mangle]
pub extern "C" fn trop_ep_model_three_site(
    kappa: *const c_char,
    gamma: *const c_char,
    tan_phi: *const c_char,
    out: *mut *mut TropEpMatrix,
) -> TropEpStatus {
    let build = || -> Result<ParametricMatrix, TropEpStatus> {
        let p = models::TrimerParams::new(
            rational_arg(kappa, "kappa")?,
            scalar_arg(gamma, "gamma")?,
            rational_arg(tan_phi, "tan_phi")?,
        )
        .map_err(model_err)?;
        models::three_site(&p).map_err(model_err)
    };
    match build() {
        Ok(m) => write_out(out, TropEpMatrix(m)),
        Err(s) => s,
    }
}

/// Non-reciprocal open chain with a weak corner link.
#[no_mangle]
pub extern "C" fn trop_ep_model_ssh_chain(
    sites: usize,
    t1: *const c_char,
    t2: *const c_char,
    gamma: *const c_char,
    out: *mut *mut TropEpMatrix,
) -> TropEpStatus {
    let build = || -> Result<ParametricMatrix, TropEpStatus> {
        let p = models::SSHParams::new(
            sites,
            rational_arg(t1, "t1")?,
            rational_arg(t2, "t2")?,
            rational_arg(gamma, "gamma")?,
        )
        .map_err(model_err)?;
        models::ssh_chain(&p).map_err(model_err)
    };
    match build() {
        Ok(m) => write_out(out, TropEpMatrix(m)),
        Err(s) => s,
    }
}

/// Asymmetric-hopping chain with corner perturbations. `disorder` is either
/// NULL (clean) or an array of six scalar strings `[a, b, c, d, m, n]`.
#[no_mangle]
pub extern "C" fn trop_ep_model_hatano_nelson(
    sites: usize,
    cos_theta: *const c_char,
    sin_theta: *const c_char,
    cos_phi: *const c_char,
    sin_phi: *const c_char,
    disorder: *const *const c_char,
    out: *mut *mut TropEpMatrix,
) -> TropEpStatus {
    let build = || -> Result<ParametricMatrix, TropEpStatus> {
        let mut p = models::HNParams::with_sites(
            sites,
            rational_arg(cos_theta, "cos_theta")?,
            rational_arg(sin_theta, "sin_theta")?,
            rational_arg(cos_phi, "cos_phi")?,
            rational_arg(sin_phi, "sin_phi")?,
        )
        .map_err(model_err)?;
        if !disorder.is_null() {
            let mut factors = Vec::with_capacity(6);
            for idx in 0..6 {
                let entry = unsafe { *disorder.add(idx) };
                factors.push(rational_arg(entry, "disorder entry")?);
            }
            p = p
                .with_disorder(factors.try_into().expect("length checked"))
                .map_err(model_err)?;
        }
        models::hatano_nelson(&p).map_err(model_err)
    };
    match build() {
        Ok(m) => write_out(out, TropEpMatrix(m)),
        Err(s) => s,
    }
}

/// Parse the matrix exchange JSON `{"n": int, "entries": [[poly,..],..]}`.
#[no_mangle]
pub extern "C" fn trop_ep_matrix_from_json(
    json: *const c_char,
    out: *mut *mut TropEpMatrix,
) -> TropEpStatus {
    let text = match unsafe { read_str(json, "json") } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match ParametricMatrix::from_json(text) {
        Ok(m) => write_out(out, TropEpMatrix(m)),
        Err(e) => {
            set_error(&e);
            TropEpStatus::InvalidInput
        }
    }
}

#[no_mangle]
pub extern "C" fn trop_ep_matrix_free(handle: *mut TropEpMatrix) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Exact characteristic polynomial `det(lambda Id - H(v))`.
#[no_mangle]
pub extern "C" fn trop_ep_char_poly(
    matrix: *const TropEpMatrix,
    out: *mut *mut TropEpPoly,
) -> TropEpStatus {
    if matrix.is_null() {
        set_error("matrix handle is NULL");
        return TropEpStatus::NullArgument;
    }
    let m = unsafe { &(*matrix).0 };
    write_out(out, TropEpPoly(char_poly(m)))
}

/// Parse the line-based polynomial format
/// (`i k re_num/re_den im_num/im_den` per term).
#[no_mangle]
pub extern "C" fn trop_ep_poly_parse(
    text: *const c_char,
    out: *mut *mut TropEpPoly,
) -> TropEpStatus {
    let text = match unsafe { read_str(text, "text") } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match BiPoly::from_text(text) {
        Ok(p) => write_out(out, TropEpPoly(p)),
        Err(e) => {
            set_error(&e.to_string());
            TropEpStatus::InvalidInput
        }
    }
}

/// Serialize back to the line-based format. Fails for coefficients outside
/// the Gaussian rationals (exact sqrt(2) parts).
#[no_mangle]
pub extern "C" fn trop_ep_poly_to_text(
    poly: *const TropEpPoly,
    out: *mut *mut c_char,
) -> TropEpStatus {
    if poly.is_null() {
        set_error("polynomial handle is NULL");
        return TropEpStatus::NullArgument;
    }
    let p = unsafe { &(*poly).0 };
    match p.to_text() {
        Ok(text) => write_string(out, text),
        Err(e) => {
            set_error(&e.to_string());
            TropEpStatus::InvalidInput
        }
    }
}

#[no_mangle]
pub extern "C" fn trop_ep_poly_free(handle: *mut TropEpPoly) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Tropical analysis of a polynomial: tropicalization, roots with
/// multiplicities, order classification, and Newton polygon data, as a
/// JSON document.
#[no_mangle]
pub extern "C" fn trop_ep_analyze_json(
    poly: *const TropEpPoly,
    out: *mut *mut c_char,
) -> TropEpStatus {
    if poly.is_null() {
        set_error("polynomial handle is NULL");
        return TropEpStatus::NullArgument;
    }
    let p = unsafe { &(*poly).0 };
    let trop = match tropicalize(p) {
        Ok(t) => t,
        Err(e) => {
            set_error(&e.to_string());
            return TropEpStatus::InvalidInput;
        }
    };
    let cls = ep_order(&trop);
    let np = match newton_polygon(p) {
        Ok(np) => np,
        Err(e) => {
            set_error(&e.to_string());
            return TropEpStatus::InvalidInput;
        }
    };
    let doc = serde_json::json!({
        "tropicalization": trop.render(),
        "roots": cls
            .roots
            .iter()
            .map(|(r, m)| serde_json::json!({
                "root": render_fraction(*r),
                "multiplicity": m,
            }))
            .collect::<Vec<_>>(),
        "order": cls.order(),
        "degenerate": cls.order().is_none(),
        "summary": cls.to_string(),
        "newton_hull": np.hull,
        "newton_normals": np.tentacle_directions(),
        "newton_is_segment": np.is_segment(),
    });
    write_string(out, doc.to_string())
}

/// Log-log splitting-exponent fit over `v = 10^-k`, `k` in
/// `[decade_min, decade_max]`, as a JSON document.
#[no_mangle]
pub extern "C" fn trop_ep_splitting_fit_json(
    matrix: *const TropEpMatrix,
    decade_min: u32,
    decade_max: u32,
    out: *mut *mut c_char,
) -> TropEpStatus {
    if matrix.is_null() {
        set_error("matrix handle is NULL");
        return TropEpStatus::NullArgument;
    }
    let m = unsafe { &(*matrix).0 };
    let fit = match splitting_exponent(
        m,
        DecadeRange {
            min: decade_min,
            max: decade_max,
        },
    ) {
        Ok(f) => f,
        Err(e) => {
            set_error(&e.to_string());
            return match e {
                tropical_ep::numerics::NumericsError::BadSpec(_) => TropEpStatus::InvalidInput,
                _ => TropEpStatus::NumericFailure,
            };
        }
    };
    let doc = serde_json::json!({
        "exponent": fit.exponent,
        "stderr": fit.stderr,
        "samples": fit.samples,
    });
    write_string(out, doc.to_string())
}

/// Eigenvalue holonomy around a loop of the given radius with `steps`
/// sample points; `touching` non-zero traces the tangent loop through the
/// degeneracy instead of the centered circle. JSON result with the
/// permutation, its cycle notation, and the petal count when defined.
#[no_mangle]
pub extern "C" fn trop_ep_holonomy_json(
    matrix: *const TropEpMatrix,
    radius: f64,
    steps: usize,
    touching: i32,
    out: *mut *mut c_char,
) -> TropEpStatus {
    if matrix.is_null() {
        set_error("matrix handle is NULL");
        return TropEpStatus::NullArgument;
    }
    let m = unsafe { &(*matrix).0 };
    let mode = if touching != 0 {
        LoopMode::Touching
    } else {
        LoopMode::Enclosing
    };
    let spec = match LoopSpec::new(radius, steps, mode) {
        Ok(s) => s,
        Err(e) => {
            set_error(&e.to_string());
            return TropEpStatus::InvalidInput;
        }
    };
    let result = match holonomy_trace(m, &spec) {
        Ok(r) => r,
        Err(e) => {
            set_error(&e.to_string());
            return TropEpStatus::NumericFailure;
        }
    };
    let doc = serde_json::json!({
        "permutation": result.permutation,
        "cycle_notation": cycle_notation(&result.permutation),
        "petal_count": result.petal_count,
        "steps_used": result.steps_used,
    });
    write_string(out, doc.to_string())
}

/// Release a string returned by this library.
#[no_mangle]
pub extern "C" fn trop_ep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
