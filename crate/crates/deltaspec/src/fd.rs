//! Independent finite-difference oracle for the transfer-matrix spectra.
//!
//! Second-order central differences on a truncated domain with Dirichlet
//! walls, eigenvalues by Sturm-sequence bisection. Deliberately different
//! mathematics from the propagator pipeline: this module never touches
//! closed-form matrices, so agreement between the two is a real check.

use crate::error::{Error, Result};
use crate::potential::Potential;

/// Guard against zero pivots in the Sturm recurrence.
const PIVOT_GUARD: f64 = 1e-300;

/// Symmetric tridiagonal discretization of `-d²/dx² + q` on `[-L, L]` with
/// Dirichlet conditions, `n` interior nodes and mesh step `h = 2L/(n+1)`.
#[derive(Debug, Clone)]
pub struct Tridiag {
    pub n: usize,
    pub diag: Vec<f64>,
    pub offdiag: f64,
    pub h: f64,
    pub half_width: f64,
}

/// Builds the discretization. Each diagonal entry uses the exact cell
/// average of `q` over `[x_i - h/2, x_i + h/2]`, which keeps O(h²) accuracy
/// through cells straddling a breakpoint.
pub fn build(q: &Potential, half_width: f64, n: usize) -> Result<Tridiag> {
    const OP: &str = "fd_build";
    let (a, b) = q.support();
    if half_width <= a.abs().max(b.abs()) {
        return Err(Error::domain(
            OP,
            format!("truncation half-width {half_width} lies inside the support [{a}, {b}]"),
        ));
    }
    if n < 100 {
        return Err(Error::invalid(
            OP,
            format!("need at least 100 nodes, got {n}"),
        ));
    }
    let h = 2.0 * half_width / (n + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let diag = (1..=n)
        .map(|i| {
            let x = -half_width + i as f64 * h;
            2.0 * inv_h2 + q.integrate(x - 0.5 * h, x + 0.5 * h) / h
        })
        .collect();
    Ok(Tridiag {
        n,
        diag,
        offdiag: -inv_h2,
        h,
        half_width,
    })
}

/// Number of eigenvalues of `t` strictly below `lambda`, via the sign count
/// of the LDLᵀ pivot sequence.
pub fn sturm_count(t: &Tridiag, lambda: f64) -> usize {
    let e2 = t.offdiag * t.offdiag;
    let mut count = 0;
    let mut piv = t.diag[0] - lambda;
    if piv < 0.0 {
        count += 1;
    }
    for i in 1..t.n {
        let safe = if piv.abs() < PIVOT_GUARD {
            if piv >= 0.0 {
                PIVOT_GUARD
            } else {
                -PIVOT_GUARD
            }
        } else {
            piv
        };
        piv = (t.diag[i] - lambda) - e2 / safe;
        if piv < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `m` smallest eigenvalues, each bisected to `|Δλ| ≤ tol`.
pub fn lowest_eigenvalues(t: &Tridiag, m: usize, tol: f64) -> Result<Vec<f64>> {
    const OP: &str = "fd_lowest_eigenvalues";
    if m == 0 {
        return Err(Error::invalid(OP, "need m >= 1 eigenvalues"));
    }
    if m > t.n {
        return Err(Error::invalid(
            OP,
            format!("m = {m} exceeds matrix size {}", t.n),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(
            OP,
            format!("tol must be positive, got {tol}"),
        ));
    }
    // Gershgorin bounds.
    let e = t.offdiag.abs();
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for (i, &d) in t.diag.iter().enumerate() {
        let row = if i == 0 || i == t.n - 1 { e } else { 2.0 * e };
        lo = lo.min(d - row);
        hi = hi.max(d + row);
    }
    lo -= 1.0;
    hi += 1.0;

    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let (mut a, mut b) = (lo, hi);
        while b - a > tol {
            let mid = 0.5 * (a + b);
            if sturm_count(t, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Truncation half-width large enough that the Dirichlet walls perturb an
/// eigenvalue with decay rate `omega_est` below the oracle's tolerance:
/// `max(30, support radius + 12/ω)`.
pub fn default_half_width(q: &Potential, omega_est: f64) -> f64 {
    let (a, b) = q.support();
    let radius = a.abs().max(b.abs());
    (radius + 12.0 / omega_est.max(1e-6)).max(30.0)
}
