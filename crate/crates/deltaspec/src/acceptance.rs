//! The acceptance suite: nine executable criteria covering counting
//! equivalences, closed forms, oracle agreement, convergence orders of the
//! asymptotic predictions, and the randomized property checks. Used both by
//! the `verify` CLI subcommand and the `acceptance` integration test target.

use crate::asymptotics::{
    delta_prediction, gamma_abs_kernel, gamma_ordered_kernel, resonant_finite_prediction,
    Convention,
};
use crate::fd;
use crate::harness::{
    assemble_scaled, fit_order, sweep, verify_bound, verify_counting, SweepConfig,
};
use crate::point::{
    harmonic_moment, interface_spectrum, sine_moment, threshold_alpha0, InterfaceParams,
};
use crate::potential::{square_barrier, square_well, step_dipole, Potential};
use crate::propagator::piece_propagator;
use crate::spectrum::{negative_eigenvalues, theta_eta, Shooting};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} — {} ({})",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

fn zero_pot() -> Potential {
    Potential::make_piecewise(vec![-1.0, 1.0], vec![0.0]).unwrap()
}

fn counting_suite() -> Vec<(String, Potential)> {
    let mut suite: Vec<(String, Potential)> = vec![
        ("square_well(2)".into(), square_well(2.0)),
        ("square_well(10)".into(), square_well(10.0)),
        ("square_well(40)".into(), square_well(40.0)),
        (
            "square_well(pi^2/4 + 0.05)".into(),
            square_well(PI * PI / 4.0 + 0.05),
        ),
        (
            "square_well(pi^2/4 - 0.05)".into(),
            square_well(PI * PI / 4.0 - 0.05),
        ),
    ];
    for h in [5.0, 20.0, 60.0] {
        suite.push((format!("step_dipole({h})"), step_dipole(h)));
    }
    suite
}

/// Deterministic 64-bit generator for the randomized property suites.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn random_potential(rng: &mut SplitMix64) -> Potential {
    let pieces = 1 + rng.index(6);
    let mut cuts = vec![-1.0];
    for _ in 0..pieces {
        cuts.push(rng.range(-1.0, 1.0));
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    if cuts.len() < 2 {
        cuts.push(cuts[0] + 0.5);
    }
    let values = (0..cuts.len() - 1)
        .map(|_| rng.range(-50.0, 50.0))
        .collect();
    Potential::make_piecewise(cuts, values).unwrap()
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Criterion 1: the eigenvalue count of the line operator equals the number
/// of positive Regge eigenvalues, exactly, across the suite.
pub fn criterion_counting_equivalence() -> CriterionResult {
    let mut passed = true;
    let mut details = String::new();
    for (name, v) in counting_suite() {
        let report = match verify_counting(&v) {
            Ok(r) => r,
            Err(e) => {
                return CriterionResult {
                    id: 1,
                    name: "counting equivalence",
                    passed: false,
                    details: format!("{name}: {e}"),
                }
            }
        };
        if report.n_t1 != report.n_regge {
            passed = false;
            let _ = write!(
                details,
                "{name}: line {} vs regge {}; ",
                report.n_t1, report.n_regge
            );
        }
        if name == "square_well(10)" && report.n_t1 != 3 {
            passed = false;
            let _ = write!(details, "square_well(10) count {} != 3; ", report.n_t1);
        }
    }
    if details.is_empty() {
        details = "line count = Regge count on all 8 suite potentials".into();
    }
    CriterionResult {
        id: 1,
        name: "counting equivalence",
        passed,
        details,
    }
}

/// Criterion 2: resonance set of square_well(10) on (0,1) and the
/// reconciliation of the resonance count with the weak-coupling birth term.
pub fn criterion_resonance_reconciliation() -> CriterionResult {
    let id = 2;
    let name = "resonance reconciliation";
    let report = match verify_counting(&square_well(10.0)) {
        Ok(r) => r,
        Err(e) => {
            return CriterionResult {
                id,
                name,
                passed: false,
                details: e.to_string(),
            }
        }
    };
    let expected = [PI * PI / 40.0, PI * PI / 10.0];
    let mut passed = report.resonances_in_01.len() == 2;
    let mut details = String::new();
    if passed {
        for (f, e) in report.resonances_in_01.iter().zip(expected.iter()) {
            if (f - e).abs() > 1e-8 {
                passed = false;
                let _ = write!(details, "resonance {f} vs analytic {e}; ");
            }
        }
    } else {
        let _ = write!(
            details,
            "found {} resonances, expected 2; ",
            report.resonances_in_01.len()
        );
    }
    if report.reconciled != 3 || !report.consistent {
        passed = false;
        let _ = write!(
            details,
            "reconciled = {} (want 3), consistent = {}; ",
            report.reconciled, report.consistent
        );
    }
    if details.is_empty() {
        details = format!(
            "resonances at pi^2/40 and pi^2/10; literal count {} != line count {} — \
             reconciled by the weak-coupling birth term (2 + 1 = 3)",
            report.literal_count, report.n_t1
        );
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

/// Criterion 3: finite-difference oracle agreement to 1e-5 relative across
/// the suite, within the runtime budget. Levels whose decay rate needs walls
/// beyond 30 get the oracle's default (larger) box at the same mesh step.
pub fn criterion_oracle_equivalence() -> CriterionResult {
    let id = 3;
    let name = "oracle equivalence";
    let start = Instant::now();
    let h_ref = 60.0 / 300_001.0;
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    for (pname, q) in counting_suite() {
        let levels = match negative_eigenvalues(&q, 1e-13) {
            Ok(l) => l,
            Err(e) => {
                return CriterionResult {
                    id,
                    name,
                    passed: false,
                    details: format!("{pname}: {e}"),
                }
            }
        };
        // Shared box for well-bound levels, per-level larger boxes otherwise.
        let shared: Vec<usize> = (0..levels.len())
            .filter(|&k| fd::default_half_width(&q, levels[k].omega) <= 30.0)
            .collect();
        let mut checks: Vec<(usize, f64)> = Vec::new(); // (k, fd lambda)
        if let Some(&deepest) = shared.iter().max() {
            let t = match fd::build(&q, 30.0, 300_000) {
                Ok(t) => t,
                Err(e) => {
                    return CriterionResult {
                        id,
                        name,
                        passed: false,
                        details: format!("{pname}: {e}"),
                    }
                }
            };
            match fd::lowest_eigenvalues(&t, deepest + 1, 1e-10) {
                Ok(evs) => {
                    for &k in &shared {
                        checks.push((k, evs[k]));
                    }
                }
                Err(e) => {
                    return CriterionResult {
                        id,
                        name,
                        passed: false,
                        details: format!("{pname}: {e}"),
                    }
                }
            }
        }
        for (k, level) in levels.iter().enumerate() {
            if shared.contains(&k) {
                continue;
            }
            let hw = fd::default_half_width(&q, level.omega);
            // Mesh for shallow levels: refining h shrinks the h² term but
            // raises the floating-point floor of the Sturm pivots (which
            // scales like 2/h² · eps). One refinement is right for moderate
            // |λ|; for the tiniest levels the reference mesh already sits
            // near the optimum.
            let h = if level.lambda().abs() >= 0.01 {
                0.5 * h_ref
            } else {
                h_ref
            };
            let n = (2.0 * hw / h).round() as usize - 1;
            let t = match fd::build(&q, hw, n) {
                Ok(t) => t,
                Err(e) => {
                    return CriterionResult {
                        id,
                        name,
                        passed: false,
                        details: format!("{pname}: {e}"),
                    }
                }
            };
            match fd::lowest_eigenvalues(&t, k + 1, 1e-11) {
                Ok(evs) => checks.push((k, evs[k])),
                Err(e) => {
                    return CriterionResult {
                        id,
                        name,
                        passed: false,
                        details: format!("{pname}: {e}"),
                    }
                }
            }
        }
        for (k, fd_lambda) in checks {
            let exact = levels[k].lambda();
            let rel = ((fd_lambda - exact) / exact).abs();
            if rel > worst {
                worst = rel;
                worst_at = format!("{pname} level {k} (lambda = {exact:.6})");
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst <= 1e-5 && elapsed <= 60.0;
    CriterionResult {
        id,
        name,
        passed,
        details: format!(
            "worst relative gap {worst:.2e} at {worst_at}; runtime {elapsed:.1}s (budget 60s)"
        ),
    }
}

/// Criterion 4: closed forms of the point models and the two analytic
/// threshold backgrounds.
pub fn criterion_closed_forms() -> CriterionResult {
    let id = 4;
    let name = "point-model closed forms";
    let mut details = String::new();
    let mut passed = true;
    let w0 = zero_pot();

    match interface_spectrum(&w0, &InterfaceParams::Delta { alpha: -2.0 }, 1e-13) {
        Ok(res) if res.len() == 1 => {
            let gap = (res[0].lambda() + 1.0).abs();
            if gap > 1e-12 {
                passed = false;
                let _ = write!(details, "delta(-2): |lambda + 1| = {gap:.2e}; ");
            }
        }
        other => {
            passed = false;
            let _ = write!(details, "delta(-2): unexpected result {other:?}; ");
        }
    }
    match interface_spectrum(
        &w0,
        &InterfaceParams::ThetaEta {
            theta: 2.0,
            eta: -5.0,
        },
        1e-13,
    ) {
        Ok(res) if res.len() == 1 => {
            let gap = (res[0].lambda() + 4.0).abs();
            if gap > 1e-12 {
                passed = false;
                let _ = write!(details, "theta_eta(2,-5): |lambda + 4| = {gap:.2e}; ");
            }
        }
        other => {
            passed = false;
            let _ = write!(details, "theta_eta(2,-5): unexpected result {other:?}; ");
        }
    }
    for b in [1.0, 2.5] {
        match threshold_alpha0(&sine_moment(b), 1e-12) {
            Ok(t) if (t.alpha0 + 2.0 * b).abs() <= 1e-10 => {}
            other => {
                passed = false;
                let _ = write!(details, "sine threshold b = {b}: {other:?}; ");
            }
        }
    }
    for k in [1.0_f64, 3.0] {
        let exact = -(2.0_f64).powf(0.75) * k.powf(0.25);
        match threshold_alpha0(&harmonic_moment(k), 1e-12) {
            Ok(t) if (t.alpha0 - exact).abs() <= 1e-10 => {}
            other => {
                passed = false;
                let _ = write!(details, "harmonic threshold k = {k}: {other:?}; ");
            }
        }
    }
    if details.is_empty() {
        details = "delta and interface eigenvalues to 1e-12; analytic thresholds to 1e-10".into();
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

/// Criterion 5: two-term expansion of the diverging levels for the dipole
/// shape — bounded remainder under the minus convention, first-order decay
/// of the leading-order gap, and strictly worse residuals under the plus
/// convention.
pub fn criterion_low_lying_asymptotics() -> CriterionResult {
    let id = 5;
    let name = "low-lying asymptotics";
    let config = SweepConfig {
        v: step_dipole(8.0),
        u: Potential::make_piecewise(vec![-1.0, 1.0], vec![1.0]).unwrap(),
        w: zero_pot(),
        eps_list: vec![0.08, 0.04, 0.02, 0.01],
        tol: 1e-12,
        convention: Convention::DerivationMinus,
    };
    let report = match sweep(&config) {
        Ok(r) => r,
        Err(e) => {
            return CriterionResult {
                id,
                name,
                passed: false,
                details: e.to_string(),
            }
        }
    };
    let n_levels = report.rows[0].eigenvalues.len();
    if n_levels == 0 || report.rows.iter().any(|r| r.eigenvalues.len() != n_levels) {
        return CriterionResult {
            id,
            name,
            passed: false,
            details: "level count changed along the sweep".into(),
        };
    }
    let mut passed = true;
    let mut details = String::new();
    let omegas: Vec<f64> = negative_eigenvalues(&config.v, 1e-13)
        .unwrap()
        .iter()
        .map(|r| r.omega)
        .collect();
    for k in 0..n_levels.min(omegas.len()) {
        let first = &report.rows[0];
        let last = report.rows.last().unwrap();
        // O(1) remainder: the residual must not grow along the sweep.
        if last.residuals_minus[k] > 2.0 * first.residuals_minus[k] {
            passed = false;
            let _ = write!(
                details,
                "k = {k}: r(0.01) = {:.3e} > 2·r(0.08) = {:.3e}; ",
                last.residuals_minus[k],
                2.0 * first.residuals_minus[k]
            );
        }
        // Leading order: |ε²λ + ω²| decays like ε.
        let pairs: Vec<(f64, f64)> = report
            .rows
            .iter()
            .map(|r| (r.eps, (r.scaled[k] + omegas[k] * omegas[k]).abs()))
            .collect();
        match fit_order(&pairs) {
            Ok(slope) if (slope - 1.0).abs() <= 0.3 => {
                let _ = write!(details, "k = {k}: leading-order slope {slope:.3}; ");
            }
            Ok(slope) => {
                passed = false;
                let _ = write!(
                    details,
                    "k = {k}: leading-order slope {slope:.3} outside 1 ± 0.3; "
                );
            }
            Err(e) => {
                passed = false;
                let _ = write!(details, "k = {k}: slope fit failed ({e}); ");
            }
        }
        // Sign resolution: the plus convention must be strictly worse.
        for row in &report.rows {
            if row.residuals_plus[k] <= row.residuals_minus[k] {
                passed = false;
                let _ = write!(
                    details,
                    "k = {k}, eps = {}: plus residual {:.3e} not worse than minus {:.3e}; ",
                    row.eps, row.residuals_plus[k], row.residuals_minus[k]
                );
            }
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

/// Criterion 6: two-term expansion of the δ-generated finite level, with and
/// without background, at second-order accuracy.
pub fn criterion_delta_asymptotics() -> CriterionResult {
    let id = 6;
    let name = "delta-perturbation asymptotics";
    let mut passed = true;
    let mut details = String::new();

    // (a) Background W = 1 on (-1,1), U = -5 on (-1/2, 1/2).
    let w = Potential::make_piecewise(vec![-1.0, 1.0], vec![1.0]).unwrap();
    let u = Potential::make_piecewise(vec![-0.5, 0.5], vec![-5.0]).unwrap();
    match delta_sweep_slope(&w, &u, &[0.1, 0.05, 0.025, 0.0125]) {
        Ok(slope) => {
            if (slope - 2.0).abs() > 0.3 {
                passed = false;
                let _ = write!(
                    details,
                    "background case slope {slope:.3} outside 2 ± 0.3; "
                );
            } else {
                let _ = write!(details, "background case slope {slope:.3}; ");
            }
        }
        Err(e) => {
            passed = false;
            let _ = write!(details, "background case failed: {e}; ");
        }
    }

    // (b) W = 0, U = -3 on (-1,1): exact coefficients (-9, 36).
    let u_flat = Potential::make_piecewise(vec![-1.0, 1.0], vec![-3.0]).unwrap();
    match delta_prediction(&zero_pot(), &u_flat) {
        Ok(p) => {
            if (p.lambda0 + 9.0).abs() > 1e-10 || (p.lambda1 - 36.0).abs() > 1e-10 {
                passed = false;
                let _ = write!(
                    details,
                    "flat case coefficients ({}, {}) != (-9, 36) within 1e-10; ",
                    p.lambda0, p.lambda1
                );
            }
        }
        Err(e) => {
            passed = false;
            let _ = write!(details, "flat case prediction failed: {e}; ");
        }
    }
    match delta_sweep_slope(&zero_pot(), &u_flat, &[0.1, 0.05, 0.025, 0.0125]) {
        Ok(slope) => {
            if (slope - 2.0).abs() > 0.3 {
                passed = false;
                let _ = write!(details, "flat case slope {slope:.3} outside 2 ± 0.3; ");
            } else {
                let _ = write!(details, "flat case slope {slope:.3}");
            }
        }
        Err(e) => {
            passed = false;
            let _ = write!(details, "flat case sweep failed: {e}; ");
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

fn delta_sweep_slope(w: &Potential, u: &Potential, eps_list: &[f64]) -> crate::Result<f64> {
    let p = delta_prediction(w, u)?;
    let v0 = zero_pot();
    let mut pairs = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let q = assemble_scaled(&v0, u, w, eps)?;
        let levels = negative_eigenvalues(&q, 1e-13)?;
        let lambda_eps = levels
            .first()
            .ok_or_else(|| crate::Error::domain("acceptance", format!("no level at eps = {eps}")))?
            .lambda()
            / (eps * eps);
        pairs.push((eps, (lambda_eps - p.lambda0 - eps * p.lambda1).abs()));
    }
    fit_order(&pairs)
}

/// Criterion 7: the finite level of the resonant shape converges to the
/// interface prediction at first order, and the threshold-coefficient
/// identity holds exactly.
pub fn criterion_resonant_finite_level() -> CriterionResult {
    let id = 7;
    let name = "resonant finite level";
    let v = square_well(PI * PI / 4.0);
    let u = Potential::make_piecewise(vec![-1.0, 1.0], vec![-1.0]).unwrap();
    let prediction = match resonant_finite_prediction(&v, &u) {
        Ok(p) => p,
        Err(e) => {
            return CriterionResult {
                id,
                name,
                passed: false,
                details: e.to_string(),
            }
        }
    };
    let mut passed = true;
    let mut details = String::new();
    if (prediction.value + 0.25).abs() > 1e-9 {
        passed = false;
        let _ = write!(details, "prediction {} != -1/4; ", prediction.value);
    }
    let identity = (prediction.value + prediction.threshold_a * prediction.threshold_a).abs();
    if identity > 1e-12 {
        passed = false;
        let _ = write!(details, "value + a² = {identity:.2e} > 1e-12; ");
    }
    // Identify the finite level along the sweep by its rescaled size.
    let omega_min = negative_eigenvalues(&v, 1e-13)
        .unwrap()
        .iter()
        .map(|r| r.omega)
        .fold(f64::MAX, f64::min);
    let class_threshold = omega_min * omega_min / 4.0;
    let mut pairs = Vec::new();
    for eps in [0.08, 0.04, 0.02, 0.01] {
        let q = match assemble_scaled(&v, &u, &zero_pot(), eps) {
            Ok(q) => q,
            Err(e) => {
                return CriterionResult {
                    id,
                    name,
                    passed: false,
                    details: e.to_string(),
                }
            }
        };
        let levels = match negative_eigenvalues(&q, 1e-13) {
            Ok(l) => l,
            Err(e) => {
                return CriterionResult {
                    id,
                    name,
                    passed: false,
                    details: e.to_string(),
                }
            }
        };
        let finite: Vec<f64> = levels
            .iter()
            .filter(|r| r.lambda().abs() < class_threshold)
            .map(|r| r.lambda() / (eps * eps))
            .collect();
        if finite.len() != 1 {
            passed = false;
            let _ = write!(
                details,
                "eps = {eps}: {} finite levels classified; ",
                finite.len()
            );
            continue;
        }
        pairs.push((eps, (finite[0] + 0.25).abs()));
    }
    if pairs.len() >= 3 {
        match fit_order(&pairs) {
            Ok(slope) if (slope - 1.0).abs() <= 0.3 => {
                let _ = write!(details, "finite-level slope {slope:.3}");
            }
            Ok(slope) => {
                passed = false;
                let _ = write!(details, "finite-level slope {slope:.3} outside 1 ± 0.3; ");
            }
            Err(e) => {
                passed = false;
                let _ = write!(details, "slope fit failed: {e}; ");
            }
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

/// Criterion 8: existence dichotomy and the moment bound along the sweeps.
pub fn criterion_existence_dichotomy() -> CriterionResult {
    let id = 8;
    let name = "existence dichotomy and moment bound";
    let mut passed = true;
    let mut details = String::new();
    let eps_list = [0.08, 0.04, 0.02, 0.01];
    let u1 = Potential::make_piecewise(vec![-1.0, 1.0], vec![1.0]).unwrap();

    for eps in eps_list {
        // Positive-mean shape: never any negative level.
        match assemble_scaled(&square_barrier(5.0), &zero_pot(), &zero_pot(), eps)
            .map(|q| crate::spectrum::count_negative(&q))
        {
            Ok(0) => {}
            Ok(n) => {
                passed = false;
                let _ = write!(details, "barrier eps = {eps}: {n} levels; ");
            }
            Err(e) => {
                passed = false;
                let _ = write!(details, "barrier eps = {eps}: {e}; ");
            }
        }
        // Zero-mean dipole: at least one.
        match assemble_scaled(&step_dipole(8.0), &zero_pot(), &zero_pot(), eps)
            .map(|q| crate::spectrum::count_negative(&q))
        {
            Ok(n) if n >= 1 => {}
            Ok(n) => {
                passed = false;
                let _ = write!(details, "dipole eps = {eps}: {n} levels; ");
            }
            Err(e) => {
                passed = false;
                let _ = write!(details, "dipole eps = {eps}: {e}; ");
            }
        }
        // Moment bound on both configurations (with and without U).
        for (vname, v, u) in [
            ("barrier", square_barrier(5.0), zero_pot()),
            ("dipole", step_dipole(8.0), zero_pot()),
            ("dipole+U", step_dipole(8.0), u1.clone()),
        ] {
            match verify_bound(&v, &u, &zero_pot(), eps) {
                Ok((_, _, true)) => {}
                Ok((n, bound, false)) => {
                    passed = false;
                    let _ = write!(
                        details,
                        "{vname} eps = {eps}: N = {n} exceeds bound {bound}; "
                    );
                }
                Err(e) => {
                    passed = false;
                    let _ = write!(details, "{vname} eps = {eps}: {e}; ");
                }
            }
        }
    }
    if details.is_empty() {
        details = "barrier binds nothing, dipole always binds, bound holds at every eps".into();
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

/// Criterion 9: randomized property suites — Wronskian conservation,
/// oscillation monotonicity, interface-parameter invariance, the
/// double-integral identity and eigenfunction consistency.
pub fn criterion_property_suites() -> CriterionResult {
    let id = 9;
    let name = "property suites";
    let mut passed = true;
    let mut details = String::new();

    // (a) Wronskian: 10⁴ random compositions. Lengths of stiff pieces are
    // capped so the determinant stays resolvable in f64 (the check is about
    // the composition algebra, not about float cancellation).
    let mut rng = SplitMix64(0x5eed_0001);
    let mut failures = 0;
    for _ in 0..10_000 {
        let pieces = 1 + rng.index(6);
        let mut m = piece_propagator(rng.range(-50.0, 50.0), rng.range(0.01, 0.25)).unwrap();
        for _ in 1..pieces {
            let m2 = rng.range(-50.0, 50.0);
            let mut len = rng.range(0.01, 0.25);
            if m2 > 0.0 {
                len = len.min(0.8 / m2.sqrt());
            }
            m = m.then(&piece_propagator(m2, len).unwrap());
        }
        let det_true = m.det_scaled() * (2.0 * m.logscale).exp();
        if (det_true - 1.0).abs() > 1e-10 || !m.logscale.is_finite() {
            failures += 1;
        }
    }
    if failures > 0 {
        passed = false;
        let _ = write!(
            details,
            "Wronskian: {failures}/10000 compositions off by > 1e-10; "
        );
    }

    // (b) Node-count monotonicity in λ on random piecewise potentials.
    let mut rng = SplitMix64(0x5eed_0002);
    let mut violations = 0;
    for _ in 0..150 {
        let q = random_potential(&mut rng);
        let sh = Shooting::plain(&q);
        let omega_max = crate::spectrum::omega_bound(&q).max(1.0);
        let mut prev = 0;
        for i in (0..=80).rev() {
            let omega = omega_max * i as f64 / 80.0 + 1e-9;
            let n = sh.eigencount(omega).unwrap();
            if n < prev {
                violations += 1;
                break;
            }
            prev = n;
        }
    }
    if violations > 0 {
        passed = false;
        let _ = write!(details, "monotonicity: {violations}/150 potentials; ");
    }

    // (c) Interface parameters are invariant under regridding (and therefore
    // under any rescaling of the half-bound state, which the formulas divide
    // out).
    let mut rng = SplitMix64(0x5eed_0003);
    for c_mult in [1.0, 4.0, 9.0] {
        let v = square_well(c_mult * PI * PI / 4.0);
        let u = random_potential(&mut rng);
        let (t1, e1) = theta_eta(&v, &u).unwrap();
        let v2 = v
            .with_breakpoint(rng.range(-0.9, 0.9))
            .with_breakpoint(0.123);
        let (t2, e2) = theta_eta(&v2, &u).unwrap();
        if (t1 - t2).abs() > 1e-10 || (e1 - e2).abs() > 1e-10 * e1.abs().max(1.0) {
            passed = false;
            let _ = write!(details, "theta_eta not invariant for c = {c_mult}·pi²/4; ");
        }
    }

    // (d) Double-integral identity for γ.
    let mut rng = SplitMix64(0x5eed_0004);
    let mut gamma_failures = 0;
    for _ in 0..500 {
        let u = random_potential(&mut rng);
        let a = gamma_abs_kernel(&u);
        let b = gamma_ordered_kernel(&u);
        if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
            gamma_failures += 1;
        }
    }
    if gamma_failures > 0 {
        passed = false;
        let _ = write!(details, "gamma identity: {gamma_failures}/500; ");
    }

    // (e) Eigenfunction continuity and normalization on random potentials.
    let mut rng = SplitMix64(0x5eed_0005);
    let mut ef_failures = 0;
    let mut checked = 0;
    for _ in 0..40 {
        let q = random_potential(&mut rng);
        let levels = match negative_eigenvalues(&q, 1e-12) {
            Ok(l) => l,
            Err(_) => {
                // An eigenvalue below the ω cutoff is possible for random
                // draws; skip, it is not a property failure.
                continue;
            }
        };
        for r in &levels {
            checked += 1;
            let v = &r.eigenfunction;
            for &bp in q.breakpoints() {
                let (vl, vr) = (v.value_side(bp, true), v.value_side(bp, false));
                let (dl, dr) = (v.derivative_side(bp, true), v.derivative_side(bp, false));
                let scale = vl.abs().max(dl.abs()).max(1.0);
                if (vl - vr).abs() > 1e-9 * scale || (dl - dr).abs() > 1e-9 * scale {
                    ef_failures += 1;
                }
            }
            let (am, ap) = v.tail_amplitudes();
            let total =
                v.integral_sq(q.support().0, q.support().1) + (am * am + ap * ap) / (2.0 * r.omega);
            if (total - 1.0).abs() > 1e-8 {
                ef_failures += 1;
            }
        }
    }
    if ef_failures > 0 {
        passed = false;
        let _ = write!(
            details,
            "eigenfunctions: {ef_failures} failures over {checked} levels; "
        );
    }

    if details.is_empty() {
        details = format!("all random suites clean ({checked} eigenfunctions checked)");
    }
    CriterionResult {
        id,
        name,
        passed,
        details,
    }
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_counting_equivalence(),
        criterion_resonance_reconciliation(),
        criterion_oracle_equivalence(),
        criterion_closed_forms(),
        criterion_low_lying_asymptotics(),
        criterion_delta_asymptotics(),
        criterion_resonant_finite_level(),
        criterion_existence_dichotomy(),
        criterion_property_suites(),
    ]
}
