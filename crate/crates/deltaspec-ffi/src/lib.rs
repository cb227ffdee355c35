//! C ABI for the deltaspec spectral library.
//!
//! Conventions:
//! * potentials are opaque handles created by `ds_potential_new` /
//!   `ds_potential_from_json` and released with `ds_potential_free`;
//! * every function returns a [`DsStatus`]; results go through out-pointers;
//! * spectra are written into caller-provided buffers. When the buffer is
//!   too small the status is `BufferTooSmall` and `*written` holds the
//!   required length, so a NULL buffer with capacity 0 queries the size.

use deltaspec::point::{exp_moment, interface_spectrum, threshold_alpha0, InterfaceParams};
use deltaspec::potential::Potential;
use deltaspec::spectrum::{
    count_negative, half_bound_state, negative_eigenvalues, regge_eigenvalues, resonance_set,
    theta_eta, RESONANCE_TOL,
};
use deltaspec::Error;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code of every C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    NoConvergence = 4,
    BufferTooSmall = 5,
    ParseError = 6,
    InternalError = 7,
}

/// Opaque potential handle.
pub struct DsPotential(Potential);

fn status_of(err: &Error) -> DsStatus {
    match err {
        Error::InvalidInput { .. } => DsStatus::InvalidArgument,
        Error::Domain { .. } => DsStatus::DomainError,
        Error::NoConvergence { .. } => DsStatus::NoConvergence,
    }
}

fn guarded(f: impl FnOnce() -> DsStatus) -> DsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => DsStatus::InternalError,
    }
}

/// Writes `values` into `buf` (capacity `cap`); `*written` receives the
/// required length in every case.
unsafe fn fill(values: &[f64], buf: *mut f64, cap: usize, written: *mut usize) -> DsStatus {
    if written.is_null() {
        return DsStatus::NullPointer;
    }
    *written = values.len();
    if values.len() > cap {
        return DsStatus::BufferTooSmall;
    }
    if values.is_empty() {
        return DsStatus::Ok;
    }
    if buf.is_null() {
        return DsStatus::NullPointer;
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    DsStatus::Ok
}

/// Human-readable name of a status code (static storage).
#[no_mangle]
pub extern "C" fn ds_status_name(status: DsStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        DsStatus::Ok => b"ok\0",
        DsStatus::NullPointer => b"null pointer\0",
        DsStatus::InvalidArgument => b"invalid argument\0",
        DsStatus::DomainError => b"domain error\0",
        DsStatus::NoConvergence => b"no convergence\0",
        DsStatus::BufferTooSmall => b"buffer too small\0",
        DsStatus::ParseError => b"parse error\0",
        DsStatus::InternalError => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}

/// Creates a piecewise-constant potential from `n_breakpoints` strictly
/// increasing breakpoints and `n_breakpoints - 1` piece values.
///
/// # Safety
/// `breakpoints` and `values` must point to arrays of the stated lengths;
/// `out` must be a valid pointer. The returned handle must be released with
/// [`ds_potential_free`].
#[no_mangle]
pub unsafe extern "C" fn ds_potential_new(
    breakpoints: *const f64,
    n_breakpoints: usize,
    values: *const f64,
    n_values: usize,
    out: *mut *mut DsPotential,
) -> DsStatus {
    if breakpoints.is_null() || values.is_null() || out.is_null() {
        return DsStatus::NullPointer;
    }
    let bp = std::slice::from_raw_parts(breakpoints, n_breakpoints).to_vec();
    let vals = std::slice::from_raw_parts(values, n_values).to_vec();
    guarded(|| match Potential::make_piecewise(bp, vals) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(DsPotential(p)));
            DsStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Parses a potential from JSON: either a raw
/// `{"breakpoints":[...],"values":[...]}` object or a named spec such as
/// `{"kind":"square_well","params":{"depth":10.0}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_potential_from_json(
    json: *const c_char,
    out: *mut *mut DsPotential,
) -> DsStatus {
    if json.is_null() || out.is_null() {
        return DsStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return DsStatus::ParseError;
    };
    guarded(|| {
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(_) => return DsStatus::ParseError,
        };
        let potential = if value.get("kind").is_some() {
            match serde_json::from_value::<deltaspec::PotentialSpec>(value) {
                Ok(spec) => match spec.build() {
                    Ok(p) => p,
                    Err(e) => return status_of(&e),
                },
                Err(_) => return DsStatus::ParseError,
            }
        } else {
            match serde_json::from_value::<Potential>(value) {
                Ok(p) => p,
                Err(_) => return DsStatus::ParseError,
            }
        };
        *out = Box::into_raw(Box::new(DsPotential(potential)));
        DsStatus::Ok
    })
}

/// Releases a potential handle. NULL is a no-op.
///
/// # Safety
/// `p` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ds_potential_free(p: *mut DsPotential) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of negative eigenvalues of `-d²/dx² + q`.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_count_negative(q: *const DsPotential, out: *mut usize) -> DsStatus {
    if q.is_null() || out.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| {
        *out = count_negative(&(*q).0);
        DsStatus::Ok
    })
}

/// Decay rates ω of the negative eigenvalues (λ = -ω²), ground state first.
///
/// # Safety
/// `q` must be a live handle; `omegas` must point to `capacity` doubles (or
/// be NULL when `capacity` is 0); `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ds_negative_eigenvalues(
    q: *const DsPotential,
    tol: f64,
    omegas: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DsStatus {
    if q.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| match negative_eigenvalues(&(*q).0, tol) {
        Ok(results) => {
            let rates: Vec<f64> = results.iter().map(|r| r.omega).collect();
            fill(&rates, omegas, capacity, written)
        }
        Err(e) => status_of(&e),
    })
}

/// Positive eigenvalues of the ω-dependent Robin problem on [-1, 1],
/// increasing.
///
/// # Safety
/// As for [`ds_negative_eigenvalues`].
#[no_mangle]
pub unsafe extern "C" fn ds_regge_eigenvalues(
    v: *const DsPotential,
    tol: f64,
    omegas: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DsStatus {
    if v.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| match regge_eigenvalues(&(*v).0, tol) {
        Ok(roots) => fill(&roots, omegas, capacity, written),
        Err(e) => status_of(&e),
    })
}

/// Couplings α in (lo, hi) for which α·V has a zero-energy resonance.
///
/// # Safety
/// As for [`ds_negative_eigenvalues`].
#[no_mangle]
pub unsafe extern "C" fn ds_resonance_set(
    v: *const DsPotential,
    lo: f64,
    hi: f64,
    tol: f64,
    alphas: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DsStatus {
    if v.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| match resonance_set(&(*v).0, lo, hi, tol) {
        Ok(found) => fill(&found, alphas, capacity, written),
        Err(e) => status_of(&e),
    })
}

/// θ = v₊/v₋ of the half-bound state, when `q` is resonant
/// (`DomainError` otherwise).
///
/// # Safety
/// `q` must be a live handle and `theta` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_half_bound_theta(q: *const DsPotential, theta: *mut f64) -> DsStatus {
    if q.is_null() || theta.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| match half_bound_state(&(*q).0, RESONANCE_TOL) {
        Ok(Some(hbs)) => {
            *theta = hbs.theta;
            DsStatus::Ok
        }
        Ok(None) => DsStatus::DomainError,
        Err(e) => status_of(&e),
    })
}

/// Interface parameters (θ, η) of the limit point interaction for a
/// resonant `v` and first-order shape `u`.
///
/// # Safety
/// Handles must be live; `theta_out` and `eta_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ds_theta_eta(
    v: *const DsPotential,
    u: *const DsPotential,
    theta_out: *mut f64,
    eta_out: *mut f64,
) -> DsStatus {
    if v.is_null() || u.is_null() || theta_out.is_null() || eta_out.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| match theta_eta(&(*v).0, &(*u).0) {
        Ok((t, e)) => {
            *theta_out = t;
            *eta_out = e;
            DsStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Threshold coupling α₀ of the δ interaction over a nonnegative compact
/// background `w`.
///
/// # Safety
/// `w` must be a live handle and `alpha0` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_threshold_alpha0(
    w: *const DsPotential,
    tol: f64,
    alpha0: *mut f64,
) -> DsStatus {
    if w.is_null() || alpha0.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(|| {
        if (*w).0.min_value() < 0.0 {
            return DsStatus::DomainError;
        }
        let moment = exp_moment(&(*w).0);
        match threshold_alpha0(&moment, tol) {
            Ok(t) => {
                *alpha0 = t.alpha0;
                DsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Negative eigenvalues of `-d²/dx² + w` with a δ interface of strength
/// `alpha` at the origin.
///
/// # Safety
/// As for [`ds_negative_eigenvalues`].
#[no_mangle]
pub unsafe extern "C" fn ds_delta_spectrum(
    w: *const DsPotential,
    alpha: f64,
    tol: f64,
    lambdas: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DsStatus {
    if w.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(
        || match interface_spectrum(&(*w).0, &InterfaceParams::Delta { alpha }, tol) {
            Ok(results) => {
                let vals: Vec<f64> = results.iter().map(|r| r.lambda()).collect();
                fill(&vals, lambdas, capacity, written)
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Negative eigenvalues of `-d²/dx² + w` with the (θ, η) interface at the
/// origin.
///
/// # Safety
/// As for [`ds_negative_eigenvalues`].
#[no_mangle]
pub unsafe extern "C" fn ds_theta_eta_spectrum(
    w: *const DsPotential,
    theta: f64,
    eta: f64,
    tol: f64,
    lambdas: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DsStatus {
    if w.is_null() {
        return DsStatus::NullPointer;
    }
    guarded(
        || match interface_spectrum(&(*w).0, &InterfaceParams::ThetaEta { theta, eta }, tol) {
            Ok(results) => {
                let vals: Vec<f64> = results.iter().map(|r| r.lambda()).collect();
                fill(&vals, lambdas, capacity, written)
            }
            Err(e) => status_of(&e),
        },
    )
}
