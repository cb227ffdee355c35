//! Exact transfer-matrix propagation of `u'' = (q(x) - λ) u` across
//! piecewise-constant `q`.
//!
//! Each constant piece has a closed-form propagator (trigonometric,
//! hyperbolic or linear), so propagation is exact up to rounding: there is
//! no step-size or discretization error anywhere. Matrices and states carry
//! a separate log-magnitude factor so that stiff pieces (`e^{μL}` beyond
//! f64 range) never overflow.

use crate::error::{Error, Result};
use crate::potential::Potential;

/// Below this value of `z = (q - λ)·L²` the trigonometric/hyperbolic entry
/// formulas lose accuracy and 4th-order Taylor forms are used instead.
const TAYLOR_Z: f64 = 1e-8;

/// Hyperbolic pieces with `μL` beyond this are built directly in factored
/// form (entries pre-divided by `e^{μL}`) to avoid overflow in `cosh`.
const STIFF_MU_L: f64 = 30.0;

/// Zeros of the solution within `1e-12` of a breakpoint are attributed to
/// the piece on the left.
const ZERO_LOC_TOL: f64 = 1e-12;

/// A 2×2 real propagator stored as `exp(logscale) · m`, with `m` kept at
/// unit magnitude (max absolute entry in `[1/2, 2]`) by renormalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledMatrix {
    pub m: [[f64; 2]; 2],
    pub logscale: f64,
}

impl ScaledMatrix {
    pub fn identity() -> Self {
        ScaledMatrix {
            m: [[1.0, 0.0], [0.0, 1.0]],
            logscale: 0.0,
        }
    }

    /// Wraps a plain matrix (logscale 0) and normalizes it.
    pub fn from_parts(m: [[f64; 2]; 2], logscale: f64) -> Self {
        let mut s = ScaledMatrix { m, logscale };
        s.normalize();
        s
    }

    /// Rescales `m` so its largest absolute entry is 1, folding the factor
    /// into `logscale`.
    pub fn normalize(&mut self) {
        let mut s = 0.0_f64;
        for row in &self.m {
            for &e in row {
                s = s.max(e.abs());
            }
        }
        debug_assert!(s > 0.0, "zero propagator matrix");
        if s > 0.0 && s != 1.0 {
            for row in &mut self.m {
                for e in row.iter_mut() {
                    *e /= s;
                }
            }
            self.logscale += s.ln();
        }
    }

    /// Determinant of the stored (rescaled) matrix; the true matrix has
    /// determinant `det(m)·exp(2·logscale)`.
    pub fn det_scaled(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Entry of the true (unscaled) matrix. Only meaningful while
    /// `exp(logscale)` is representable.
    pub fn entry_true(&self, i: usize, j: usize) -> f64 {
        self.m[i][j] * self.logscale.exp()
    }

    /// `second ∘ self`: the propagator that applies `self` first.
    pub fn then(&self, second: &ScaledMatrix) -> ScaledMatrix {
        let a = second.m;
        let b = self.m;
        let m = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        ScaledMatrix::from_parts(m, self.logscale + second.logscale)
    }

    /// Inverse propagator. Intended for moderate scales (tests, reversibility
    /// checks); uses the stored determinant directly.
    pub fn inverse(&self) -> ScaledMatrix {
        let det = self.det_scaled();
        debug_assert!(det > 0.0, "propagator determinant must be positive");
        let m = [[self.m[1][1], -self.m[0][1]], [-self.m[1][0], self.m[0][0]]];
        ScaledMatrix::from_parts(m, -self.logscale - det.ln())
    }

    pub fn apply(&self, s: &State) -> State {
        let u = self.m[0][0] * s.u + self.m[0][1] * s.du;
        let du = self.m[1][0] * s.u + self.m[1][1] * s.du;
        let mut out = State {
            u,
            du,
            logscale: s.logscale + self.logscale,
        };
        out.normalize();
        out
    }
}

/// Solution data `(u, u')` at a point, stored as `exp(logscale) · (u, du)`
/// with the pair kept at unit Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub u: f64,
    pub du: f64,
    pub logscale: f64,
}

impl State {
    pub fn new(u: f64, du: f64) -> Self {
        let mut s = State {
            u,
            du,
            logscale: 0.0,
        };
        s.normalize();
        s
    }

    pub fn normalize(&mut self) {
        let r = self.u.hypot(self.du);
        debug_assert!(r > 0.0, "zero state");
        if r > 0.0 && r != 1.0 {
            self.u /= r;
            self.du /= r;
            self.logscale += r.ln();
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.u == 0.0 && self.du == 0.0
    }
}

/// Closed-form propagator of `u'' = m2 · u` over a piece of the given length
/// (`m2 = q - λ`), mapping `(u, u')` at the piece start to the piece end.
pub fn piece_propagator(q_minus_lambda: f64, length: f64) -> Result<ScaledMatrix> {
    const OP: &str = "piece_propagator";
    if length < 0.0 || !length.is_finite() {
        return Err(Error::invalid(
            OP,
            format!("length must be >= 0, got {length}"),
        ));
    }
    let m2 = q_minus_lambda;
    let l = length;
    let z = m2 * l * l;

    let matrix = if z.abs() < TAYLOR_Z {
        // cosh/cos and sinh/sin entries via their common series in z = m2·L².
        let c = 1.0 + z / 2.0 + z * z / 24.0;
        let s_over_mu = l * (1.0 + z / 6.0 + z * z / 120.0);
        [[c, s_over_mu], [m2 * s_over_mu, c]]
    } else if m2 > 0.0 {
        let mu = m2.sqrt();
        if mu * l > STIFF_MU_L {
            // Factored form: entries of e^{-μL}·M stay O(μ) at worst.
            let em = (-2.0 * mu * l).exp();
            let c = 0.5 * (1.0 + em);
            let s = 0.5 * (1.0 - em);
            return Ok(ScaledMatrix::from_parts([[c, s / mu], [mu * s, c]], mu * l));
        }
        let c = (mu * l).cosh();
        let s = (mu * l).sinh();
        [[c, s / mu], [mu * s, c]]
    } else {
        let k = (-m2).sqrt();
        let c = (k * l).cos();
        let s = (k * l).sin();
        [[c, s / k], [-k * s, c]]
    };
    Ok(ScaledMatrix::from_parts(matrix, 0.0))
}

/// One constant-coefficient segment of a propagation path.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub x0: f64,
    pub x1: f64,
    pub q: f64,
}

/// Splits `[from, to]` along the breakpoints of `p`, including zero-valued
/// stretches outside or between pieces of the support.
pub fn segments(p: &Potential, from: f64, to: f64) -> Vec<Segment> {
    let mut cuts = vec![from];
    for &bp in p.breakpoints() {
        if bp > from && bp < to {
            cuts.push(bp);
        }
    }
    cuts.push(to);
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| Segment {
            x0: w[0],
            x1: w[1],
            q: p.eval(0.5 * (w[0] + w[1])),
        })
        .collect()
}

/// Propagates `init` from `from` to `to` through `p` at spectral parameter
/// `lambda`, renormalizing after every piece.
pub fn propagate(p: &Potential, lambda: f64, from: f64, to: f64, init: State) -> Result<State> {
    const OP: &str = "propagate";
    if from > to {
        return Err(Error::invalid(
            OP,
            format!("from = {from} exceeds to = {to}"),
        ));
    }
    if init.is_trivial() {
        return Err(Error::invalid(OP, "initial state must be nonzero"));
    }
    let mut state = init;
    for seg in segments(p, from, to) {
        let m = piece_propagator(seg.q - lambda, seg.x1 - seg.x0)?;
        state = m.apply(&state);
    }
    Ok(state)
}

/// Number of zeros of the piece solution on `(0, L]`, given the states at
/// both ends. `m2 = q - λ`.
///
/// Oscillatory pieces use the exact phase advance of `atan2(k·u, u')` (the
/// phase increases at constant rate `k`, and `u ∝ sin` of it). Otherwise the
/// solution `A e^{μt} + B e^{-μt}` (or the linear/Taylor form) has at most
/// one zero, which a sign comparison detects; zeros within [`ZERO_LOC_TOL`]
/// of the right endpoint are counted here, so the piece owning a breakpoint
/// zero is always the one on its left.
fn count_zeros_piece(m2: f64, length: f64, before: &State, after: &State) -> usize {
    if length == 0.0 {
        return 0;
    }
    let z = m2 * length * length;
    if m2 < 0.0 && z.abs() >= TAYLOR_Z {
        let k = (-m2).sqrt();
        let phi0 = (k * before.u).atan2(before.du);
        let shift = k * ZERO_LOC_TOL;
        let lo = (phi0 + shift) / std::f64::consts::PI;
        let hi = (phi0 + k * length + shift) / std::f64::consts::PI;
        (hi.floor() - lo.floor()).max(0.0) as usize
    } else {
        // At most one zero. Transversal crossings flip the sign of u; a zero
        // within the location tolerance of the right endpoint is counted here
        // (attributed left), one within tolerance of the left endpoint was
        // already counted by the previous piece.
        if before.u * after.u < 0.0 {
            let t_star = -before.u / before.du;
            if before.du != 0.0 && (0.0..=ZERO_LOC_TOL).contains(&t_star) {
                0
            } else {
                1
            }
        } else if after.u == 0.0
            || (after.u * after.du < 0.0 && after.u.abs() <= ZERO_LOC_TOL * after.du.abs())
        {
            // Crossing imminent just past the right endpoint: attributed here.
            1
        } else {
            0
        }
    }
}

/// Propagates across `[from, to]` while counting interior zeros on `(from, to]`.
pub fn propagate_nodes_over(
    p: &Potential,
    lambda: f64,
    from: f64,
    to: f64,
    init: State,
) -> Result<(State, usize)> {
    const OP: &str = "propagate_nodes";
    if init.is_trivial() {
        return Err(Error::invalid(OP, "initial state must be nonzero"));
    }
    let mut state = init;
    let mut nodes = 0;
    for seg in segments(p, from, to) {
        let m = piece_propagator(seg.q - lambda, seg.x1 - seg.x0)?;
        let next = m.apply(&state);
        nodes += count_zeros_piece(seg.q - lambda, seg.x1 - seg.x0, &state, &next);
        state = next;
    }
    Ok((state, nodes))
}

/// Propagates `init` across the support of `p` at energy `lambda ≤ 0`,
/// returning the final state and the exact count of interior zeros of the
/// solution on `(x₀, x_m]`.
pub fn propagate_nodes(p: &Potential, lambda: f64, init: State) -> Result<(State, usize)> {
    let (a, b) = p.support();
    propagate_nodes_over(p, lambda, a, b, init)
}
