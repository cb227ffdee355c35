//! Exercises the C ABI exactly as a foreign caller would: raw pointers,
//! status codes, two-call buffer sizing.

use deltaspec_ffi::*;
use std::ffi::CString;
use std::ptr;

unsafe fn make_well(depth: f64) -> *mut DsPotential {
    let bp = [-1.0, 1.0];
    let vals = [-depth];
    let mut handle: *mut DsPotential = ptr::null_mut();
    let status = ds_potential_new(bp.as_ptr(), 2, vals.as_ptr(), 1, &mut handle);
    assert_eq!(status, DsStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn construction_and_count() {
    unsafe {
        let p = make_well(10.0);
        let mut n = 0usize;
        assert_eq!(ds_count_negative(p, &mut n), DsStatus::Ok);
        assert_eq!(n, 3);
        ds_potential_free(p);
    }
}

#[test]
fn construction_rejects_bad_input() {
    unsafe {
        let bp = [1.0, 0.0];
        let vals = [-1.0];
        let mut handle: *mut DsPotential = ptr::null_mut();
        assert_eq!(
            ds_potential_new(bp.as_ptr(), 2, vals.as_ptr(), 1, &mut handle),
            DsStatus::InvalidArgument
        );
        assert_eq!(
            ds_potential_new(ptr::null(), 0, vals.as_ptr(), 1, &mut handle),
            DsStatus::NullPointer
        );
    }
}

#[test]
fn json_construction() {
    unsafe {
        let spec = CString::new(r#"{"kind":"square_well","params":{"depth":10.0}}"#).unwrap();
        let mut handle: *mut DsPotential = ptr::null_mut();
        assert_eq!(
            ds_potential_from_json(spec.as_ptr(), &mut handle),
            DsStatus::Ok
        );
        let mut n = 0usize;
        assert_eq!(ds_count_negative(handle, &mut n), DsStatus::Ok);
        assert_eq!(n, 3);
        ds_potential_free(handle);

        let bad = CString::new("not json").unwrap();
        assert_eq!(
            ds_potential_from_json(bad.as_ptr(), &mut handle),
            DsStatus::ParseError
        );
    }
}

#[test]
fn eigenvalues_with_two_call_sizing() {
    unsafe {
        let p = make_well(10.0);
        let mut needed = 0usize;
        // Size query: zero capacity.
        assert_eq!(
            ds_negative_eigenvalues(p, 1e-12, ptr::null_mut(), 0, &mut needed),
            DsStatus::BufferTooSmall
        );
        assert_eq!(needed, 3);
        let mut omegas = vec![0.0; needed];
        assert_eq!(
            ds_negative_eigenvalues(p, 1e-12, omegas.as_mut_ptr(), omegas.len(), &mut needed),
            DsStatus::Ok
        );
        assert_eq!(needed, 3);
        assert!((omegas[0] - 2.931).abs() < 2e-3);
        // Regge route agrees (increasing order there).
        let mut regge = vec![0.0; 3];
        let mut written = 0usize;
        assert_eq!(
            ds_regge_eigenvalues(p, 1e-12, regge.as_mut_ptr(), 3, &mut written),
            DsStatus::Ok
        );
        assert_eq!(written, 3);
        assert!((regge[2] - omegas[0]).abs() < 1e-10);
        ds_potential_free(p);
    }
}

#[test]
fn resonances_and_half_bound() {
    unsafe {
        let p = make_well(10.0);
        let mut alphas = vec![0.0; 8];
        let mut written = 0usize;
        assert_eq!(
            ds_resonance_set(p, 0.0, 1.0, 1e-10, alphas.as_mut_ptr(), 8, &mut written),
            DsStatus::Ok
        );
        assert_eq!(written, 2);
        assert!((alphas[0] - std::f64::consts::PI.powi(2) / 40.0).abs() < 1e-8);

        // Non-resonant: domain error.
        let mut theta = 0.0;
        assert_eq!(ds_half_bound_theta(p, &mut theta), DsStatus::DomainError);
        ds_potential_free(p);

        // Resonant well: θ = -1.
        let p = make_well(std::f64::consts::PI.powi(2) / 4.0);
        assert_eq!(ds_half_bound_theta(p, &mut theta), DsStatus::Ok);
        assert!((theta + 1.0).abs() < 1e-9);
        ds_potential_free(p);
    }
}

#[test]
fn theta_eta_parameters() {
    unsafe {
        let v = make_well(std::f64::consts::PI.powi(2) / 4.0);
        let bp = [-1.0, 1.0];
        let vals = [-1.0];
        let mut u: *mut DsPotential = ptr::null_mut();
        assert_eq!(
            ds_potential_new(bp.as_ptr(), 2, vals.as_ptr(), 1, &mut u),
            DsStatus::Ok
        );
        let (mut theta, mut eta) = (0.0, 0.0);
        assert_eq!(ds_theta_eta(v, u, &mut theta, &mut eta), DsStatus::Ok);
        assert!((theta + 1.0).abs() < 1e-9);
        assert!((eta - 1.0).abs() < 1e-9);
        ds_potential_free(v);
        ds_potential_free(u);
    }
}

#[test]
fn interface_models_and_threshold() {
    unsafe {
        // Flat background.
        let bp = [-1.0, 1.0];
        let vals = [0.0];
        let mut w: *mut DsPotential = ptr::null_mut();
        assert_eq!(
            ds_potential_new(bp.as_ptr(), 2, vals.as_ptr(), 1, &mut w),
            DsStatus::Ok
        );

        let mut lambdas = [0.0; 4];
        let mut written = 0usize;
        assert_eq!(
            ds_delta_spectrum(w, -2.0, 1e-13, lambdas.as_mut_ptr(), 4, &mut written),
            DsStatus::Ok
        );
        assert_eq!(written, 1);
        assert!((lambdas[0] + 1.0).abs() < 1e-12);

        assert_eq!(
            ds_theta_eta_spectrum(w, 2.0, -5.0, 1e-13, lambdas.as_mut_ptr(), 4, &mut written),
            DsStatus::Ok
        );
        assert_eq!(written, 1);
        assert!((lambdas[0] + 4.0).abs() < 1e-12);

        // θ = 0 is invalid.
        assert_eq!(
            ds_theta_eta_spectrum(w, 0.0, 1.0, 1e-13, lambdas.as_mut_ptr(), 4, &mut written),
            DsStatus::InvalidArgument
        );
        ds_potential_free(w);

        // Threshold for W = 1 on (-1,1) ≈ -1.8331.
        let ones = [1.0];
        let mut w1: *mut DsPotential = ptr::null_mut();
        assert_eq!(
            ds_potential_new(bp.as_ptr(), 2, ones.as_ptr(), 1, &mut w1),
            DsStatus::Ok
        );
        let mut alpha0 = 0.0;
        assert_eq!(ds_threshold_alpha0(w1, 1e-12, &mut alpha0), DsStatus::Ok);
        assert!((alpha0 + 1.8331).abs() < 1e-3, "alpha0 = {alpha0}");
        ds_potential_free(w1);
    }
}

#[test]
fn status_names_are_stable() {
    unsafe {
        let name = std::ffi::CStr::from_ptr(ds_status_name(DsStatus::BufferTooSmall));
        assert_eq!(name.to_str().unwrap(), "buffer too small");
    }
}
