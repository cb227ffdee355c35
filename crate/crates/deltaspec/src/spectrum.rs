//! Negative eigenvalues, eigenfunctions, Regge eigenvalues, zero-energy
//! resonances and the resonance set for `-d²/dx² + q` on the full line.
//!
//! Eigenvalues are parametrized by the decay rate `ω > 0` (`λ = -ω²`). The
//! left-decaying shooting solution starts as `e^{ω(x-a)}` at the left support
//! edge; its normalized boundary defect at the right edge,
//! `D̂(ω) = (u'(b) + ω·u(b)) / ‖(u(b), u'(b))‖`, vanishes exactly at
//! eigenvalues, and `D̂(0) = 0` detects a zero-energy resonance. Roots are
//! bracketed by the integer count of eigenvalues below `-ω²` (interior nodes
//! of the shooting solution plus a tail-zero test), which is monotone in ω
//! and cannot miss tangential roots.

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::propagator::{piece_propagator, propagate_nodes_over, segments, ScaledMatrix, State};

/// Decay rates below this are treated as the continuum edge rather than a
/// genuine eigenvalue.
pub const OMEGA_CUTOFF: f64 = 1e-8;

/// `|D̂(0)|` below this declares the potential resonant; the propagators are
/// exact, so only rounding noise remains at a true resonance.
pub const RESONANCE_TOL: f64 = 1e-9;

const MAX_BISECT: usize = 200;

// ---------------------------------------------------------------------------
// Closed-form fundamental solutions of u'' = m2·u.
//
// C(t) is the cosh/cos-like solution (C(0)=1, C'(0)=0) and S(t) the
// sinh/sin-like one (S(0)=0, S'(0)=1); they satisfy S' = C, C' = m2·S and
// C² - m2·S² = 1 in every branch.
// ---------------------------------------------------------------------------

const TAYLOR_Z: f64 = 1e-8;

pub(crate) fn fund_c(m2: f64, t: f64) -> f64 {
    let z = m2 * t * t;
    if z.abs() < TAYLOR_Z {
        1.0 + z / 2.0 + z * z / 24.0
    } else if m2 > 0.0 {
        (m2.sqrt() * t).cosh()
    } else {
        ((-m2).sqrt() * t).cos()
    }
}

pub(crate) fn fund_s(m2: f64, t: f64) -> f64 {
    let z = m2 * t * t;
    if z.abs() < TAYLOR_Z {
        t * (1.0 + z / 6.0 + z * z / 120.0)
    } else if m2 > 0.0 {
        let mu = m2.sqrt();
        (mu * t).sinh() / mu
    } else {
        let k = (-m2).sqrt();
        (k * t).sin() / k
    }
}

/// Antiderivatives (vanishing at t = 0) of C², C·S and S².
fn int_c2(m2: f64, t: f64) -> f64 {
    0.5 * (t + fund_s(m2, t) * fund_c(m2, t))
}

fn int_cs(m2: f64, t: f64) -> f64 {
    let s = fund_s(m2, t);
    0.5 * s * s
}

fn int_s2(m2: f64, t: f64) -> f64 {
    let z = m2 * t * t;
    if z.abs() < TAYLOR_Z {
        // (S·C - t)/(2 m2) cancels catastrophically here; use the series.
        t * t * t / 3.0 + m2 * t.powi(5) / 15.0
    } else {
        (fund_s(m2, t) * fund_c(m2, t) - t) / (2.0 * m2)
    }
}

// ---------------------------------------------------------------------------
// Piecewise closed-form solutions
// ---------------------------------------------------------------------------

/// One piece of a solution: `v(x) = amp · (u0·C(x-x0) + du0·S(x-x0))`.
///
/// Hyperbolic pieces are evaluated through the exponential amplitudes
/// `A·e^{μt} + B·e^{-μt}` rather than cosh/sinh combinations: for a decaying
/// solution the latter cancel catastrophically once `μt` is large (both
/// grow like `e^{μt}` while the solution shrinks like `e^{-μt}`), which
/// matters on the long zero-potential stretches of assembled sweeps.
#[derive(Debug, Clone, Copy)]
pub struct SolutionPiece {
    pub x0: f64,
    pub x1: f64,
    pub m2: f64,
    pub u0: f64,
    pub du0: f64,
    pub amp: f64,
}

impl SolutionPiece {
    fn is_exponential(&self) -> bool {
        let l = self.x1 - self.x0;
        self.m2 > 0.0 && self.m2 * l * l >= TAYLOR_Z
    }

    /// Exponential amplitudes `(A, B, μ)` with `u(t) = A e^{μt} + B e^{-μt}`.
    fn exp_amplitudes(&self) -> (f64, f64, f64) {
        let mu = self.m2.sqrt();
        let a = 0.5 * (self.u0 + self.du0 / mu);
        let b = 0.5 * (self.u0 - self.du0 / mu);
        (a, b, mu)
    }

    fn value(&self, x: f64) -> f64 {
        let t = x - self.x0;
        if self.is_exponential() {
            let (a, b, mu) = self.exp_amplitudes();
            self.amp * (a * (mu * t).exp() + b * (-mu * t).exp())
        } else {
            self.amp * (self.u0 * fund_c(self.m2, t) + self.du0 * fund_s(self.m2, t))
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        let t = x - self.x0;
        if self.is_exponential() {
            let (a, b, mu) = self.exp_amplitudes();
            self.amp * mu * (a * (mu * t).exp() - b * (-mu * t).exp())
        } else {
            // (C' = m2·S, S' = C)
            self.amp * (self.u0 * self.m2 * fund_s(self.m2, t) + self.du0 * fund_c(self.m2, t))
        }
    }

    /// `∫ v² dt` over `[a, b] ⊆ [x0, x1]`, exactly.
    fn integral_sq(&self, a: f64, b: f64) -> f64 {
        let (t1, t2) = (a - self.x0, b - self.x0);
        if self.is_exponential() {
            // ∫(Ae^{μt} + Be^{-μt})² = A²e^{2μt}/(2μ) + 2ABt - B²e^{-2μt}/(2μ).
            let (ea, eb, mu) = self.exp_amplitudes();
            let grow = ea * ea * (2.0 * mu * t1).exp() * (2.0 * mu * (t2 - t1)).exp_m1();
            let decay = eb * eb * (-2.0 * mu * t2).exp() * (2.0 * mu * (t2 - t1)).exp_m1();
            return self.amp * self.amp * ((grow + decay) / (2.0 * mu) + 2.0 * ea * eb * (t2 - t1));
        }
        let m2 = self.m2;
        let part = |t: f64| {
            self.u0 * self.u0 * int_c2(m2, t)
                + 2.0 * self.u0 * self.du0 * int_cs(m2, t)
                + self.du0 * self.du0 * int_s2(m2, t)
        };
        self.amp * self.amp * (part(t2) - part(t1))
    }
}

fn locate(pieces: &[SolutionPiece], x: f64, prefer_left: bool) -> usize {
    // Pieces tile the support contiguously; pick the piece containing x,
    // honoring the side at shared endpoints.
    let mut idx = pieces.partition_point(|p| p.x1 < x || (!prefer_left && p.x1 == x));
    if idx >= pieces.len() {
        idx = pieces.len() - 1;
    }
    idx
}

fn pieces_integral_sq(pieces: &[SolutionPiece], a: f64, b: f64) -> f64 {
    let mut total = 0.0;
    for p in pieces {
        let lo = p.x0.max(a);
        let hi = p.x1.min(b);
        if hi > lo {
            total += p.integral_sq(lo, hi);
        }
    }
    total
}

/// A normalized eigenfunction of the shooting problem: closed-form pieces on
/// the support plus exact exponential tails `a₋·e^{ω(x-a)}` and
/// `a₊·e^{-ω(x-b)}`. The full-line L² norm is 1 and the left tail is
/// positive.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pieces: Vec<SolutionPiece>,
    support: (f64, f64),
    omega: f64,
    a_minus: f64,
    a_plus: f64,
}

impl Eigenfunction {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn tail_amplitudes(&self) -> (f64, f64) {
        (self.a_minus, self.a_plus)
    }

    pub fn pieces(&self) -> &[SolutionPiece] {
        &self.pieces
    }

    pub fn value(&self, x: f64) -> f64 {
        self.value_side(x, false)
    }

    /// Value with an explicit side at interior interfaces (`left = true`
    /// evaluates the limit from below).
    pub fn value_side(&self, x: f64, left: bool) -> f64 {
        let (a, b) = self.support;
        if x < a || (x == a && left) {
            self.a_minus * (self.omega * (x - a)).exp()
        } else if x > b || (x == b && !left) {
            self.a_plus * (-self.omega * (x - b)).exp()
        } else {
            self.pieces[locate(&self.pieces, x, left)].value(x)
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.derivative_side(x, false)
    }

    pub fn derivative_side(&self, x: f64, left: bool) -> f64 {
        let (a, b) = self.support;
        if x < a || (x == a && left) {
            self.omega * self.a_minus * (self.omega * (x - a)).exp()
        } else if x > b || (x == b && !left) {
            -self.omega * self.a_plus * (-self.omega * (x - b)).exp()
        } else {
            self.pieces[locate(&self.pieces, x, left)].derivative(x)
        }
    }

    /// Negates the representation on `x ≥ at`. Maps an eigenfunction
    /// computed through the positive-θ unitary representative back to the
    /// original θ < 0 interface (the flip is the unitary itself).
    pub(crate) fn negate_right_of(&mut self, at: f64) {
        for p in &mut self.pieces {
            if p.x0 >= at {
                p.amp = -p.amp;
            }
        }
        if self.support.1 >= at {
            self.a_plus = -self.a_plus;
        }
    }

    /// Exact `∫ v² dx` over `[lo, hi]` (finite bounds).
    pub fn integral_sq(&self, lo: f64, hi: f64) -> f64 {
        if !(lo < hi) {
            return 0.0;
        }
        let (a, b) = self.support;
        let om = self.omega;
        let mut total = 0.0;
        // Left tail part.
        let tl_hi = hi.min(a);
        if lo < tl_hi {
            let e = |x: f64| (2.0 * om * (x - a)).exp();
            total += self.a_minus * self.a_minus / (2.0 * om) * (e(tl_hi) - e(lo));
        }
        total += pieces_integral_sq(&self.pieces, lo.max(a), hi.min(b));
        // Right tail part.
        let tr_lo = lo.max(b);
        if tr_lo < hi {
            let e = |x: f64| (-2.0 * om * (x - b)).exp();
            total += self.a_plus * self.a_plus / (2.0 * om) * (e(tr_lo) - e(hi));
        }
        total
    }

    /// `∫_{|x| > r} v² dx`, computed directly from the closed forms (no
    /// subtraction from 1, so tiny masses keep full relative accuracy).
    pub fn mass_outside(&self, r: f64) -> f64 {
        let (a, b) = self.support;
        let om = self.omega;
        let mut total = 0.0;
        // x < -r
        if -r <= a {
            total += self.a_minus * self.a_minus / (2.0 * om) * (2.0 * om * (-r - a)).exp();
        } else {
            total += self.a_minus * self.a_minus / (2.0 * om)
                + pieces_integral_sq(&self.pieces, a, (-r).min(b));
            if b < -r {
                total += self.a_plus * self.a_plus / (2.0 * om)
                    - self.a_plus * self.a_plus / (2.0 * om) * (-2.0 * om * (-r - b)).exp();
            }
        }
        // x > r
        if r >= b {
            total += self.a_plus * self.a_plus / (2.0 * om) * (-2.0 * om * (r - b)).exp();
        } else {
            total += self.a_plus * self.a_plus / (2.0 * om)
                + pieces_integral_sq(&self.pieces, r.max(a), b);
            if a > r {
                total += self.a_minus * self.a_minus / (2.0 * om)
                    - self.a_minus * self.a_minus / (2.0 * om) * (2.0 * om * (r - a)).exp();
            }
        }
        total
    }

    /// Exact `∫ w·v² dx` against a piecewise-constant weight (the weight is
    /// zero outside its own support; the eigenfunction tails are integrated
    /// in closed form where the weight overlaps them).
    pub fn weighted_integral_sq(&self, w: &Potential) -> f64 {
        let (a, b) = self.support;
        let om = self.omega;
        let mut total = 0.0;
        for i in 0..w.values().len() {
            let val = w.values()[i];
            if val == 0.0 {
                continue;
            }
            let (lo, hi) = (w.breakpoints()[i], w.breakpoints()[i + 1]);
            // Tail overlaps.
            let tl_hi = hi.min(a);
            if lo < tl_hi {
                let e = |x: f64| (2.0 * om * (x - a)).exp();
                total += val * self.a_minus * self.a_minus / (2.0 * om) * (e(tl_hi) - e(lo));
            }
            total += val * pieces_integral_sq(&self.pieces, lo.max(a), hi.min(b));
            let tr_lo = lo.max(b);
            if tr_lo < hi {
                let e = |x: f64| (-2.0 * om * (x - b)).exp();
                total += val * self.a_plus * self.a_plus / (2.0 * om) * (e(tr_lo) - e(hi));
            }
        }
        total
    }
}

/// One negative eigenvalue `λ = -ω²` of the shooting problem, with its
/// normalized eigenfunction.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub omega: f64,
    pub node_index: usize,
    pub mismatch_residual: f64,
    pub eigenfunction: Eigenfunction,
}

impl SpectralResult {
    pub fn lambda(&self) -> f64 {
        -self.omega * self.omega
    }
}

/// Zero-energy bounded solution data: `v ≡ v₋` left of the support,
/// `v ≡ v₊` right of it, closed-form pieces in between; normalized to
/// `v₋ = 1`, so `θ = v₊`.
#[derive(Debug, Clone)]
pub struct HalfBoundState {
    pieces: Vec<SolutionPiece>,
    support: (f64, f64),
    pub v_minus: f64,
    pub v_plus: f64,
    pub theta: f64,
}

impl HalfBoundState {
    pub fn value(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        if x <= a {
            self.v_minus
        } else if x >= b {
            self.v_plus
        } else {
            self.pieces[locate(&self.pieces, x, false)].value(x)
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        if x <= a || x >= b {
            0.0
        } else {
            self.pieces[locate(&self.pieces, x, false)].derivative(x)
        }
    }

    /// Exact `∫ w·v² dx` against a piecewise-constant weight; the constant
    /// tails contribute `v₋²` / `v₊²` times the overlap length.
    pub fn weighted_integral_sq(&self, w: &Potential) -> f64 {
        let (a, b) = self.support;
        let mut total = 0.0;
        for i in 0..w.values().len() {
            let val = w.values()[i];
            if val == 0.0 {
                continue;
            }
            let (lo, hi) = (w.breakpoints()[i], w.breakpoints()[i + 1]);
            if lo < a.min(hi) {
                total += val * self.v_minus * self.v_minus * (a.min(hi) - lo);
            }
            total += val * pieces_integral_sq(&self.pieces, lo.max(a), hi.min(b));
            if hi > b.max(lo) {
                total += val * self.v_plus * self.v_plus * (hi - b.max(lo));
            }
        }
        total
    }
}

// ---------------------------------------------------------------------------
// Shooting machinery (shared by the full-line operators and the
// point-interaction models, which insert a jump matrix at the origin)
// ---------------------------------------------------------------------------

/// A 2×2 unimodular jump applied to `(u, u')` at a fixed interior point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Jump {
    pub at: f64,
    pub matrix: [[f64; 2]; 2],
}

pub(crate) struct Shooting<'a> {
    pub q: &'a Potential,
    pub jump: Option<Jump>,
}

impl<'a> Shooting<'a> {
    pub fn plain(q: &'a Potential) -> Self {
        Shooting { q, jump: None }
    }

    fn split(&self) -> (f64, f64, Option<f64>) {
        let (a, b) = self.q.support();
        (a, b, self.jump.map(|j| j.at))
    }

    /// Final state at the right support edge for the shooting solution with
    /// left data `(1, ω)`, plus the interior node count. A sign flip across
    /// the jump is counted defensively, but the point-interaction callers
    /// normalize to positive-θ jumps, which never flip.
    fn shoot(&self, omega: f64) -> Result<(State, usize)> {
        let lambda = -omega * omega;
        let (a, b, at) = self.split();
        let init = State::new(1.0, omega);
        match at {
            None => propagate_nodes_over(self.q, lambda, a, b, init),
            Some(x_j) => {
                let jump = self.jump.unwrap();
                let (left, n_left) = propagate_nodes_over(self.q, lambda, a, x_j, init)?;
                let jm = ScaledMatrix::from_parts(jump.matrix, 0.0);
                let after = jm.apply(&left);
                let flip = usize::from(left.u * after.u < 0.0);
                let (right, n_right) = propagate_nodes_over(self.q, lambda, x_j, b, after)?;
                Ok((right, n_left + flip + n_right))
            }
        }
    }

    /// Normalized boundary defect `D̂(ω)`.
    pub fn mismatch(&self, omega: f64) -> Result<f64> {
        if omega < 0.0 || !omega.is_finite() {
            return Err(Error::invalid(
                "mismatch",
                format!("omega must be >= 0, got {omega}"),
            ));
        }
        let (state, _) = self.shoot(omega)?;
        Ok(state.du + omega * state.u)
    }

    /// Number of eigenvalues strictly below `-ω²` (for ω > 0), by Sturm
    /// oscillation: interior nodes plus one when the solution also vanishes
    /// once in the right tail.
    pub fn eigencount(&self, omega: f64) -> Result<usize> {
        let (state, nodes) = self.shoot(omega)?;
        let tail = if omega == 0.0 {
            // Linear continuation u(b) + u'(b)(x-b) vanishes on (b, ∞).
            state.u * state.du < 0.0
        } else {
            let dhat = state.du + omega * state.u;
            state.u * dhat < 0.0
        };
        Ok(nodes + usize::from(tail))
    }

    /// Locates all negative eigenvalues with decay rates in
    /// `(OMEGA_CUTOFF, omega_max]`.
    pub fn solve(&self, omega_max: f64, tol: f64) -> Result<Vec<SpectralResult>> {
        const OP: &str = "negative_eigenvalues";
        if !(tol > 0.0) {
            return Err(Error::invalid(
                OP,
                format!("tol must be positive, got {tol}"),
            ));
        }
        let total = self.eigencount(0.0)?;
        if total == 0 || omega_max <= OMEGA_CUTOFF {
            if total != 0 {
                return Err(Error::no_convergence(
                    OP,
                    format!("{total} eigenvalue(s) expected but search range is empty"),
                ));
            }
            return Ok(Vec::new());
        }
        if self.eigencount(OMEGA_CUTOFF)? != total {
            return Err(Error::no_convergence(
                OP,
                "an eigenvalue sits below the ω cutoff 1e-8".to_string(),
            ));
        }

        let mut out = Vec::with_capacity(total);
        for k in 0..total {
            let omega = self.locate_root(k, omega_max, tol)?;
            let eigenfunction = self.eigenfunction(omega);
            let mismatch_residual = self.mismatch(omega)?.abs();
            out.push(SpectralResult {
                omega,
                node_index: k,
                mismatch_residual,
                eigenfunction,
            });
        }
        Ok(out)
    }

    /// ω of the eigenvalue with node index `k`: integer bisection on the
    /// eigenvalue count brackets the root, then bisection on the mismatch
    /// refines it to `|Δω| ≤ tol`, then a few clamped secant steps polish
    /// the residual.
    fn locate_root(&self, k: usize, omega_max: f64, tol: f64) -> Result<f64> {
        const OP: &str = "negative_eigenvalues";
        let mut lo = OMEGA_CUTOFF;
        let mut hi = omega_max;
        // Stage 1: integer bisection; the count drops from k+1 to k at ω_k.
        let coarse = (1e-4 * omega_max).max(8.0 * tol);
        let mut iter = 0;
        while hi - lo > coarse {
            iter += 1;
            if iter > MAX_BISECT {
                return Err(Error::no_convergence(
                    OP,
                    format!("node bracketing stalled at k = {k}"),
                ));
            }
            let mid = 0.5 * (lo + hi);
            if self.eigencount(mid)? > k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Isolation: a near-degenerate cluster can leave several transitions
        // inside the coarse bracket (n(lo) > k+1); shrink until exactly the
        // k-th one remains, so the sign search below cannot lock onto a
        // neighbor.
        let mut n_lo = self.eigencount(lo)?;
        let mut iter = 0;
        while n_lo != k + 1 {
            iter += 1;
            if iter > MAX_BISECT {
                return Err(Error::no_convergence(
                    OP,
                    format!("could not isolate eigenvalue k = {k} (clustered spectrum)"),
                ));
            }
            let mid = 0.5 * (lo + hi);
            let n_mid = self.eigencount(mid)?;
            if n_mid > k {
                lo = mid;
                n_lo = n_mid;
            } else {
                hi = mid;
            }
        }
        // Stage 2: mismatch bisection inside the bracket.
        let mut f_lo = self.mismatch(lo)?;
        let mut f_hi = self.mismatch(hi)?;
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_lo.signum() == f_hi.signum() {
            // Bracket still contains more than one root (or a grazing pair):
            // fall back to pure integer bisection down to tol.
            let mut iter = 0;
            while hi - lo > tol {
                iter += 1;
                if iter > MAX_BISECT {
                    return Err(Error::no_convergence(
                        OP,
                        format!("integer refinement stalled at k = {k}"),
                    ));
                }
                let mid = 0.5 * (lo + hi);
                if self.eigencount(mid)? > k {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        let mut iter = 0;
        while hi - lo > tol {
            iter += 1;
            if iter > MAX_BISECT {
                return Err(Error::no_convergence(
                    OP,
                    format!("mismatch bisection stalled at k = {k}"),
                ));
            }
            let mid = 0.5 * (lo + hi);
            let f_mid = self.mismatch(mid)?;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        // Stage 3: secant polish, clamped to the final bracket.
        let (mut x0, mut x1) = (lo, hi);
        let (mut f0, mut f1) = (f_lo, f_hi);
        let mut best = if f0.abs() < f1.abs() {
            (x0, f0)
        } else {
            (x1, f1)
        };
        for _ in 0..40 {
            if f1 == f0 {
                break;
            }
            let mut x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if !(lo..=hi).contains(&x2) {
                x2 = 0.5 * (lo + hi);
            }
            let f2 = self.mismatch(x2)?;
            if f2.abs() < best.1.abs() {
                best = (x2, f2);
            }
            if f2.abs() <= 1e-15 {
                break;
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f2;
            if (x1 - x0).abs() < f64::EPSILON * x1.abs() {
                break;
            }
        }
        Ok(best.0)
    }

    /// Piecewise closed-form eigenfunction at decay rate ω, L²-normalized on
    /// the full line with a positive left tail.
    pub fn eigenfunction(&self, omega: f64) -> Eigenfunction {
        let lambda = -omega * omega;
        let (a, b, at) = self.split();
        let mut state = State::new(1.0, omega);
        let mut raw: Vec<(SolutionPiece, f64)> = Vec::new(); // (piece, log_amp)

        let mut record = |from: f64, to: f64, state: &mut State| {
            for seg in segments(self.q, from, to) {
                let m2 = seg.q - lambda;
                raw.push((
                    SolutionPiece {
                        x0: seg.x0,
                        x1: seg.x1,
                        m2,
                        u0: state.u,
                        du0: state.du,
                        amp: 1.0,
                    },
                    state.logscale,
                ));
                let m = piece_propagator(m2, seg.x1 - seg.x0).expect("positive length");
                *state = m.apply(state);
            }
        };

        match at {
            None => record(a, b, &mut state),
            Some(x_j) => {
                record(a, x_j, &mut state);
                let jm = ScaledMatrix::from_parts(self.jump.unwrap().matrix, 0.0);
                state = jm.apply(&state);
                record(x_j, b, &mut state);
            }
        }

        // Log-magnitude accounting: norm² = Σ e^{2(ℓᵢ - ℓref)}·Iᵢ + tails.
        let end_log = state.logscale + state.u.abs().max(f64::MIN_POSITIVE).ln();
        let mut lref = 0.0_f64.max(end_log);
        for (_, l) in &raw {
            lref = lref.max(*l);
        }
        let mut norm_sq = 0.0;
        // Left tail: amplitude 1 (true scale), ∫ = 1/(2ω).
        norm_sq += (-2.0 * lref).exp() / (2.0 * omega);
        for (p, l) in &raw {
            norm_sq += (2.0 * (l - lref)).exp() * p.integral_sq(p.x0, p.x1);
        }
        let a_plus_raw = state.u; // true amplitude: e^{ℓ_b}·u_b
        norm_sq += (2.0 * (state.logscale - lref)).exp() * a_plus_raw * a_plus_raw / (2.0 * omega);
        let log_norm = lref + 0.5 * norm_sq.ln();

        let pieces: Vec<SolutionPiece> = raw
            .into_iter()
            .map(|(mut p, l)| {
                p.amp = (l - log_norm).exp();
                p
            })
            .collect();
        Eigenfunction {
            pieces,
            support: (a, b),
            omega,
            a_minus: (-log_norm).exp(),
            a_plus: a_plus_raw * (state.logscale - log_norm).exp(),
        }
    }
}

// ---------------------------------------------------------------------------
// Public operations for the full-line operator -d²/dx² + q
// ---------------------------------------------------------------------------

/// Normalized boundary defect `D̂(ω)` of the left-decaying shooting solution.
/// Zeros on ω > 0 are the Regge eigenvalues and give eigenvalues `-ω²`;
/// `D̂(0) = 0` exactly when `q` is resonant.
pub fn mismatch(q: &Potential, omega: f64) -> Result<f64> {
    Shooting::plain(q).mismatch(omega)
}

/// Number of negative eigenvalues, by Sturm oscillation at zero energy.
pub fn count_negative(q: &Potential) -> usize {
    Shooting::plain(q)
        .eigencount(0.0)
        .expect("zero-energy count cannot fail on a valid potential")
}

/// Upper end of the decay-rate search range for `-d²/dx² + q`.
pub fn omega_bound(q: &Potential) -> f64 {
    (-q.min_value()).max(0.0).sqrt() * (1.0 + 1e-12)
}

/// All negative eigenvalues `-ω₀² < -ω₁² < …`, sorted by node index
/// (ground state first), each refined to `|Δω| ≤ tol`.
pub fn negative_eigenvalues(q: &Potential, tol: f64) -> Result<Vec<SpectralResult>> {
    Shooting::plain(q).solve(omega_bound(q), tol)
}

/// Positive eigenvalues of the ω-dependent Robin problem on `[-1, 1]`
/// (`u'(∓1) = ±ω·u(∓1)`), located by a sign scan of the boundary defect —
/// deliberately a different search than [`negative_eigenvalues`], so the
/// equality of the two spectra is a cross-executable check. Returned in
/// increasing order.
pub fn regge_eigenvalues(v: &Potential, tol: f64) -> Result<Vec<f64>> {
    const OP: &str = "regge_eigenvalues";
    if !(tol > 0.0) {
        return Err(Error::invalid(
            OP,
            format!("tol must be positive, got {tol}"),
        ));
    }
    let (a, b) = v.support();
    if a < -1.0 - 1e-12 || b > 1.0 + 1e-12 {
        return Err(Error::domain(
            OP,
            format!("support [{a}, {b}] must be contained in [-1, 1]"),
        ));
    }
    let padded = v.pad_to(-1.0, 1.0)?;
    let shooting = Shooting::plain(&padded);
    let omega_max = omega_bound(&padded);
    if omega_max <= OMEGA_CUTOFF {
        return Ok(Vec::new());
    }

    // Scan grid: linear across the range plus a logarithmic refinement near
    // the continuum edge so shallow states are not stepped over.
    const LINEAR_POINTS: usize = 4096;
    let mut grid = Vec::with_capacity(LINEAR_POINTS + 64);
    let first_linear = omega_max / LINEAR_POINTS as f64;
    let ratio = (first_linear / OMEGA_CUTOFF).powf(1.0 / 64.0);
    let mut w = OMEGA_CUTOFF;
    for _ in 0..64 {
        grid.push(w);
        w *= ratio;
    }
    for i in 1..=LINEAR_POINTS {
        grid.push(omega_max * i as f64 / LINEAR_POINTS as f64);
    }

    let mut roots: Vec<f64> = Vec::new();
    let mut prev_w = grid[0];
    let mut prev_f = shooting.mismatch(prev_w)?;
    for &wx in &grid[1..] {
        let f = shooting.mismatch(wx)?;
        if f == 0.0 {
            // Exact hit on a grid point; owned by this interval.
            roots.push(wx);
        } else if prev_f != 0.0 && prev_f.signum() != f.signum() {
            let (mut lo, mut hi, mut f_lo) = (prev_w, wx, prev_f);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                let f_mid = shooting.mismatch(mid)?;
                if f_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_w = wx;
        prev_f = f;
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
    Ok(roots)
}

/// The zero-energy bounded solution when `|D̂(0)| ≤ tol`, normalized to
/// `v(a) = 1`, `v'(a) = 0`; `None` when `q` is not resonant.
pub fn half_bound_state(q: &Potential, tol: f64) -> Result<Option<HalfBoundState>> {
    const OP: &str = "half_bound_state";
    if !(tol > 0.0) {
        return Err(Error::invalid(
            OP,
            format!("tol must be positive, got {tol}"),
        ));
    }
    let defect = mismatch(q, 0.0)?;
    if defect.abs() > tol {
        return Ok(None);
    }
    let (a, b) = q.support();
    let mut state = State::new(1.0, 0.0);
    let mut pieces = Vec::new();
    for seg in segments(q, a, b) {
        pieces.push(SolutionPiece {
            x0: seg.x0,
            x1: seg.x1,
            m2: seg.q,
            u0: state.u,
            du0: state.du,
            amp: state.logscale.exp(),
        });
        let m = piece_propagator(seg.q, seg.x1 - seg.x0)?;
        state = m.apply(&state);
    }
    let v_plus = state.logscale.exp() * state.u;
    Ok(Some(HalfBoundState {
        pieces,
        support: (a, b),
        v_minus: 1.0,
        v_plus,
        theta: v_plus,
    }))
}

/// Interface parameters `(θ, η)` of the limiting point interaction:
/// `θ = v₊/v₋` and `η = (1/(v₋v₊)) ∫ U v² dx` for the half-bound state `v`
/// of `V`. Both are invariant under rescaling of `v`.
pub fn theta_eta(v: &Potential, u: &Potential) -> Result<(f64, f64)> {
    const OP: &str = "theta_eta";
    let hbs = half_bound_state(v, RESONANCE_TOL)?
        .ok_or_else(|| Error::domain(OP, "V is not resonant (no half-bound state)".to_string()))?;
    let integral = hbs.weighted_integral_sq(u);
    Ok((hbs.theta, integral / (hbs.v_minus * hbs.v_plus)))
}

/// All couplings `α ∈ (lo + tol, hi - tol)` for which `αV` is resonant,
/// found by bisecting the unit jumps of `α ↦ count_negative(αV)`; each
/// returned point is within `tol` of the true resonance.
pub fn resonance_set(v: &Potential, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    const OP: &str = "resonance_set";
    if !(lo < hi) {
        return Err(Error::invalid(
            OP,
            format!("need lo < hi, got [{lo}, {hi}]"),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(
            OP,
            format!("tol must be positive, got {tol}"),
        ));
    }
    if v.is_zero() {
        return Err(Error::domain(
            OP,
            "potential is identically zero".to_string(),
        ));
    }
    let count = |alpha: f64| count_negative(&v.mul_values(alpha));
    let a0 = lo + tol;
    let b0 = hi - tol;
    if !(a0 < b0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack = vec![(a0, b0, count(a0), count(b0))];
    while let Some((a, b, n_a, n_b)) = stack.pop() {
        if n_a == n_b {
            continue;
        }
        if b - a <= tol {
            let mid = 0.5 * (a + b);
            for _ in 0..n_b.abs_diff(n_a) {
                out.push(mid);
            }
            continue;
        }
        let m = 0.5 * (a + b);
        let n_m = count(m);
        stack.push((a, m, n_a, n_m));
        stack.push((m, b, n_m, n_b));
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{square_barrier, square_well, step_dipole, Potential};
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn zero_potential() -> Potential {
        Potential::make_piecewise(vec![-1.0, 1.0], vec![0.0]).unwrap()
    }

    /// Independent oracle for the square well -c on (-1,1): even levels solve
    /// k·tan(k) = ω, odd levels -k·cot(k) = ω, with k² + ω² = c. Bisection on
    /// the branch structure, no transfer matrices involved.
    fn square_well_omegas(c: f64) -> Vec<f64> {
        let kmax = c.sqrt();
        let f_even = |k: f64| k * k.tan() - (c - k * k).sqrt();
        let f_odd = |k: f64| -k / k.tan() - (c - k * k).sqrt();
        let mut omegas = Vec::new();
        // Even branches: k ∈ (nπ, nπ + π/2); odd: k ∈ (nπ + π/2, (n+1)π).
        let mut n = 0;
        loop {
            let lo = n as f64 * PI / 2.0;
            let hi = ((n + 1) as f64 * PI / 2.0).min(kmax);
            if lo >= kmax {
                break;
            }
            let f = if n % 2 == 0 {
                &f_even as &dyn Fn(f64) -> f64
            } else {
                &f_odd
            };
            let (mut a, mut b) = (lo + 1e-9, hi - 1e-9);
            if b > a && f(a) < 0.0 && f(b) > 0.0 {
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if f(m) < 0.0 {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                let k = 0.5 * (a + b);
                omegas.push((c - k * k).sqrt());
            } else if b > a && f(b) <= 0.0 && f(a) < 0.0 && (c - b * b).sqrt() < 1e-6 {
                // Root pinned against the k = √c edge (ω ≈ 0): skip; such a
                // level would sit below any sensible search cutoff.
            }
            n += 1;
        }
        omegas.sort_by(|x, y| y.partial_cmp(x).unwrap());
        omegas
    }

    #[test]
    fn mismatch_free_cases() {
        let z = zero_potential();
        assert!((mismatch(&z, 1.0).unwrap() - 2.0_f64.sqrt()).abs() < 1e-12);
        assert!(mismatch(&z, 0.0).unwrap().abs() < 1e-15);
        assert!(mismatch(&z, -0.5).is_err());
    }

    #[test]
    fn mismatch_detects_resonant_well() {
        let resonant = square_well(PI * PI / 4.0);
        assert!(mismatch(&resonant, 0.0).unwrap().abs() < 1e-12);
        let generic = square_well(10.0);
        assert!(mismatch(&generic, 0.0).unwrap().abs() > 1e-3);
    }

    #[test]
    fn mismatch_positive_beyond_spectrum_bound() {
        for q in [square_well(10.0), step_dipole(8.0), square_barrier(5.0)] {
            let bound = omega_bound(&q);
            for i in 0..20 {
                let omega = bound + 1e-6 + i as f64 * 0.37;
                assert!(
                    mismatch(&q, omega).unwrap() > 0.0,
                    "D̂ must be positive at ω = {omega}"
                );
            }
        }
    }

    #[test]
    fn count_negative_examples() {
        assert_eq!(count_negative(&zero_potential()), 0);
        assert_eq!(count_negative(&square_well(10.0)), 3);
        assert_eq!(count_negative(&square_barrier(5.0)), 0);
        assert_eq!(count_negative(&square_well(2.0)), 1);
    }

    #[test]
    fn square_well_eigenvalues_match_transcendental_roots() {
        for &c in &[2.0, 10.0, 40.0] {
            let expected = square_well_omegas(c);
            let got = negative_eigenvalues(&square_well(c), TOL).unwrap();
            assert_eq!(got.len(), expected.len(), "count for c = {c}");
            for (k, (r, w)) in got.iter().zip(expected.iter()).enumerate() {
                assert!(
                    (r.omega - w).abs() <= 1e-9 * w.max(1.0),
                    "c = {c}, k = {k}: {} vs oracle {w}",
                    r.omega
                );
                assert_eq!(r.node_index, k);
            }
        }
    }

    #[test]
    fn ground_state_of_well_10() {
        let results = negative_eigenvalues(&square_well(10.0), TOL).unwrap();
        assert_eq!(results.len(), 3);
        assert!((results[0].omega - 2.931).abs() < 2e-3);
        assert!(results[0].mismatch_residual <= 1e-10);
        // ω strictly decreasing in node index.
        assert!(results[0].omega > results[1].omega);
        assert!(results[1].omega > results[2].omega);
        // Min-max bound.
        for r in &results {
            assert!(r.omega * r.omega <= 10.0 + 1e-9);
        }
    }

    #[test]
    fn empty_spectrum_cases() {
        assert!(negative_eigenvalues(&zero_potential(), TOL)
            .unwrap()
            .is_empty());
        assert!(negative_eigenvalues(&square_barrier(5.0), TOL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn threshold_well_has_exactly_one_level() {
        // At c = π²/4 the second level is exactly half-bound, not an eigenvalue.
        let c = PI * PI / 4.0;
        assert_eq!(count_negative(&square_well(c)), 1);
        assert_eq!(negative_eigenvalues(&square_well(c), TOL).unwrap().len(), 1);
        assert_eq!(count_negative(&square_well(c + 0.05)), 2);
        assert_eq!(count_negative(&square_well(c - 0.05)), 1);
    }

    #[test]
    fn regge_spectrum_equals_line_spectrum() {
        for q in [
            square_well(2.0),
            square_well(10.0),
            square_well(40.0),
            step_dipole(8.0),
        ] {
            let mut line: Vec<f64> = negative_eigenvalues(&q, TOL)
                .unwrap()
                .iter()
                .map(|r| r.omega)
                .collect();
            line.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let regge = regge_eigenvalues(&q, TOL).unwrap();
            assert_eq!(line.len(), regge.len(), "count mismatch");
            for (a, b) in line.iter().zip(regge.iter()) {
                assert!((a - b).abs() <= 1e-10 * a.max(1.0), "{a} vs {b}");
            }
        }
        assert!(regge_eigenvalues(&zero_potential(), TOL)
            .unwrap()
            .is_empty());
        assert_eq!(
            regge_eigenvalues(&square_well(PI * PI / 4.0), TOL)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn regge_rejects_wide_support() {
        let wide = Potential::make_piecewise(vec![-2.0, 2.0], vec![-1.0]).unwrap();
        assert!(regge_eigenvalues(&wide, TOL).is_err());
    }

    #[test]
    fn half_bound_states() {
        let hbs = half_bound_state(&zero_potential(), RESONANCE_TOL)
            .unwrap()
            .unwrap();
        assert_eq!(hbs.theta, 1.0);

        let hbs = half_bound_state(&square_well(PI * PI / 4.0), RESONANCE_TOL)
            .unwrap()
            .unwrap();
        assert!((hbs.theta + 1.0).abs() < 1e-9, "theta = {}", hbs.theta);
        // v' vanishes at the right edge (defining property).
        assert!(hbs.derivative(1.0 - 1e-14).abs() < 1e-8);

        assert!(half_bound_state(&square_well(10.0), RESONANCE_TOL)
            .unwrap()
            .is_none());
    }

    #[test]
    fn theta_eta_closed_forms() {
        let v = square_well(PI * PI / 4.0);
        let u = Potential::make_piecewise(vec![-1.0, 1.0], vec![-1.0]).unwrap();
        let (theta, eta) = theta_eta(&v, &u).unwrap();
        assert!((theta + 1.0).abs() < 1e-9);
        // ∫v² = 1 for v = cos(π(x+1)/2), so η = (1/(1·(-1)))·(-1) = 1.
        assert!((eta - 1.0).abs() < 1e-9, "eta = {eta}");

        let (_, eta0) = theta_eta(&v, &zero_potential()).unwrap();
        assert_eq!(eta0, 0.0);

        assert!(theta_eta(&square_well(10.0), &u).is_err());
    }

    #[test]
    fn theta_eta_invariant_under_grid_refinement() {
        let v = square_well(PI * PI / 4.0);
        let v_split = v.with_breakpoint(0.3).with_breakpoint(-0.62);
        let u = Potential::make_piecewise(vec![-0.8, 0.2, 0.9], vec![2.0, -1.5]).unwrap();
        let (t1, e1) = theta_eta(&v, &u).unwrap();
        let (t2, e2) = theta_eta(&v_split, &u).unwrap();
        assert!((t1 - t2).abs() < 1e-12);
        assert!((e1 - e2).abs() < 1e-11 * e1.abs().max(1.0));
    }

    #[test]
    fn resonance_set_of_square_well() {
        // αV resonant at 2√(10α) = nπ, i.e. α = n²π²/40.
        let v = square_well(10.0);
        let found = resonance_set(&v, 0.0, 1.0, 1e-10).unwrap();
        let expected = [PI * PI / 40.0, PI * PI / 10.0];
        assert_eq!(found.len(), 2);
        for (f, e) in found.iter().zip(expected.iter()) {
            assert!((f - e).abs() < 1e-8, "{f} vs {e}");
        }
        assert!(resonance_set(&v, 0.0, 0.2, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn resonance_set_barrier_empty_with_scan_oracle() {
        let v = square_barrier(5.0);
        assert!(resonance_set(&v, 0.0, 1.0, 1e-10).unwrap().is_empty());
        // Brute-force oracle: the defect stays strictly positive on (0, 1).
        for i in 1..200 {
            let alpha = i as f64 / 200.0;
            assert!(mismatch(&v.mul_values(alpha), 0.0).unwrap() > 0.0);
        }
    }

    #[test]
    fn resonance_set_rejects_bad_input() {
        let v = square_well(1.0);
        assert!(resonance_set(&v, 1.0, 0.0, 1e-10).is_err());
        assert!(resonance_set(&zero_potential(), 0.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn eigenfunction_continuity_and_robin_conditions() {
        let q =
            Potential::make_piecewise(vec![-1.0, -0.3, 0.2, 1.0], vec![-12.0, 4.0, -30.0]).unwrap();
        for r in negative_eigenvalues(&q, TOL).unwrap() {
            let v = &r.eigenfunction;
            let om = r.omega;
            // Continuity of v and v' across every breakpoint.
            for &bp in q.breakpoints() {
                let (vl, vr) = (v.value_side(bp, true), v.value_side(bp, false));
                let (dl, dr) = (v.derivative_side(bp, true), v.derivative_side(bp, false));
                assert!(
                    (vl - vr).abs() <= 1e-9 * vl.abs().max(1.0),
                    "v jump at {bp}"
                );
                assert!(
                    (dl - dr).abs() <= 1e-9 * dl.abs().max(1.0),
                    "v' jump at {bp}"
                );
            }
            // Decaying boundary data on both sides.
            let (a, b) = v.support();
            assert!((v.derivative_side(a, true) - om * v.value_side(a, true)).abs() < 1e-9);
            assert!((v.derivative_side(b, false) + om * v.value_side(b, false)).abs() < 1e-9);
            // Positive left tail.
            assert!(v.tail_amplitudes().0 > 0.0);
            // ODE residual by central differences: v'' = (q - λ)v away from
            // the breakpoints (finite-difference route, independent of the
            // closed forms).
            let h = 1e-5;
            for &x in &[-0.7, -0.05, 0.6, 0.9] {
                let second = (v.value(x + h) - 2.0 * v.value(x) + v.value(x - h)) / (h * h);
                let expect = (q.eval(x) + om * om) * v.value(x);
                assert!(
                    (second - expect).abs() <= 1e-4 * expect.abs().max(1.0),
                    "ODE residual at {x}: {second} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn eigenfunction_norm_against_quadrature() {
        // Simpson quadrature as an independent check of the closed-form norm.
        let q = square_well(10.0);
        for r in negative_eigenvalues(&q, TOL).unwrap() {
            let v = &r.eigenfunction;
            let om = r.omega;
            let (lo, hi) = (-1.0 - 45.0 / om, 1.0 + 45.0 / om);
            let n = 400_001;
            let h = (hi - lo) / (n - 1) as f64;
            let mut s = 0.0;
            for i in 0..n {
                let x = lo + i as f64 * h;
                let w = if i == 0 || i == n - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                s += w * v.value(x) * v.value(x);
            }
            s *= h / 3.0;
            assert!((s - 1.0).abs() < 1e-6, "norm² = {s} for ω = {om}");
            // Closed-form total via integral_sq + tails should be 1 ± 1e-8.
            let inner = v.integral_sq(-1.0, 1.0);
            let (am, ap) = v.tail_amplitudes();
            let total = inner + (am * am + ap * ap) / (2.0 * om);
            assert!((total - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn exterior_mass_consistency() {
        let q = square_well(10.0);
        let r = &negative_eigenvalues(&q, TOL).unwrap()[0];
        let v = &r.eigenfunction;
        // mass_outside(r) + ∫_{-r}^{r} v² = 1.
        for &radius in &[0.25, 0.5, 1.0, 3.0] {
            let total = v.mass_outside(radius) + v.integral_sq(-radius, radius);
            assert!((total - 1.0).abs() < 1e-9, "radius {radius}: {total}");
        }
    }

    #[test]
    fn zero_padding_does_not_disturb_spectrum_or_masses() {
        // A well flanked by zero-valued padding: inside the padding the
        // solution decays over several e-foldings, which breaks cosh/sinh
        // evaluation unless the exponential form is used.
        let q = square_well(10.0).pad_to(-8.0, 8.0).unwrap();
        let results = negative_eigenvalues(&q, TOL).unwrap();
        assert_eq!(results.len(), 3);
        let bare = negative_eigenvalues(&square_well(10.0), TOL).unwrap();
        for (padded, plain) in results.iter().zip(bare.iter()) {
            assert!((padded.omega - plain.omega).abs() <= 1e-10 * plain.omega);
            let v = &padded.eigenfunction;
            for radius in [0.25, 2.0, 6.0, 12.0] {
                let m = v.mass_outside(radius);
                assert!(
                    m.is_finite() && (0.0..=1.0 + 1e-9).contains(&m),
                    "radius {radius}: {m}"
                );
                let total = m + v.integral_sq(-radius, radius);
                assert!((total - 1.0).abs() < 1e-8, "radius {radius}: {total}");
            }
            // Into the padding the value matches the decay from the support
            // edge of the unpadded problem. The comparison degrades like
            // e^{2ωt} times the ω tolerance (the residual growing component
            // of the shooting solution is genuine), so keep t moderate.
            let t = 2.0;
            let expect = v.value_side(1.0, true) * (-padded.omega * t).exp();
            let got = v.value(1.0 + t);
            assert!(
                ((got - expect) / expect).abs() < 1e-5,
                "padding value {got} vs {expect} for omega {}",
                padded.omega
            );
        }
    }

    #[test]
    fn near_degenerate_double_well_pairs_resolved() {
        // Two deep wells split by a tall barrier: tunneling makes the levels
        // come in exponentially close pairs, stressing the bracket isolation.
        let q = Potential::make_piecewise(vec![-1.0, -0.1, 0.1, 1.0], vec![-40.0, 2500.0, -40.0])
            .unwrap();
        let results = negative_eigenvalues(&q, 1e-13).unwrap();
        assert_eq!(results.len(), count_negative(&q));
        assert!(
            results.len() >= 4,
            "expected paired levels, got {}",
            results.len()
        );
        for w in results.windows(2) {
            assert!(w[0].omega > w[1].omega, "rates must be strictly ordered");
        }
        for (k, r) in results.iter().enumerate() {
            assert_eq!(r.node_index, k);
            assert!(r.mismatch_residual <= 1e-10);
        }
        // Independent confirmation of every level by the fd oracle.
        let t = crate::fd::build(&q, 30.0, 300_000).unwrap();
        let fd_evs = crate::fd::lowest_eigenvalues(&t, results.len(), 1e-11).unwrap();
        for (r, fd_ev) in results.iter().zip(fd_evs.iter()) {
            let rel = ((fd_ev - r.lambda()) / r.lambda()).abs();
            assert!(
                rel <= 1e-5,
                "level {}: fd {} vs {}",
                r.node_index,
                fd_ev,
                r.lambda()
            );
        }
    }

    #[test]
    fn node_count_monotone_in_lambda() {
        // Sturm: the eigenvalue count below λ is nondecreasing in λ.
        let q = Potential::make_piecewise(vec![-1.0, -0.2, 0.5, 1.0], vec![-30.0, 10.0, -45.0])
            .unwrap();
        let sh = Shooting::plain(&q);
        let mut prev = 0;
        let omega_max = omega_bound(&q);
        for i in (1..=400).rev() {
            let omega = omega_max * i as f64 / 400.0;
            let n = sh.eigencount(omega).unwrap();
            assert!(n >= prev, "count dropped from {prev} to {n} at ω = {omega}");
            prev = n;
        }
        assert!(sh.eigencount(0.0).unwrap() >= prev);
    }
}
